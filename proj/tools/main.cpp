#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return skew::cli::main(argc, argv, std::cout, std::cerr); }
