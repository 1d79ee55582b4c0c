#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skewlab/skew_product.hpp"

namespace skew::cli {

enum class Format { json, csv };

struct Config {
  std::string command;
  std::string input;  // empty: no input file
  long n_max = 16;
  long k_max = 32;
  int rank = -1;      // -1: per-command default
  std::string eps;    // "num/den"
  std::uint64_t seed = 0;
  long samples = 200;
  int jobs = 1;
  int p = 2;
  std::string out;    // empty: write to the output stream
  Format format = Format::json;
  bool decimal = false;
};

enum ExitCode : int { kOk = 0, kUsage = 1, kFalsified = 2, kResolution = 3 };

// Runs one command; reports go to `out` (or --out), diagnostics to `err`.
int run(const Config& config, std::ostream& out, std::ostream& err);

// Parses argv with CLI11, then runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Seeded corpus used by category-sweep: ranks drawn from 0..max_rank.
std::vector<SkewProduct> sample_corpus(int p, int max_rank, long count, std::uint64_t seed);

}  // namespace skew::cli
