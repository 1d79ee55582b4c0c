#pragma once

#include <stdexcept>
#include <string>

namespace skew {

// Root of every error the library throws. Subclasses map onto the CLI exit
// codes: ParseError -> 1, FalsificationError -> 2, CapError/ResolutionError -> 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class RankError : public Error {
public:
  using Error::Error;
};

class BaseMismatchError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class BoundaryError : public Error {
public:
  using Error::Error;
};

class TowerError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class CapError : public Error {
public:
  using Error::Error;
};

// An approximation needs more resolution than the rank cap allows.
class ResolutionError : public CapError {
public:
  ResolutionError(const std::string& what, int required_rank)
      : CapError(what), required_rank_(required_rank) {}

  // -1 when the required rank could not be determined.
  int required_rank() const noexcept { return required_rank_; }

private:
  int required_rank_;
};

// A proven identity or inequality failed on concrete data.
class FalsificationError : public Error {
public:
  using Error::Error;
};

}  // namespace skew
