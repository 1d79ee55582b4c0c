#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "skewlab/rational.hpp"

namespace skew {

using Index = std::size_t;

// Rank cap bounding p^k cell counts. Default: 12 for p = 2, and the largest k
// with p^k <= 4096 otherwise. A process-wide override replaces the p = 2 cap
// and rescales the others to the same cell budget.
struct Limits {
  static int max_rank(int p);
  static void set_binary_cap(int rank);
  static void reset();
};

// p^k with validation of p and the rank cap.
Index cells(int p, int rank);
void check_base(int p);
void check_rank(int p, int rank);
void require_same_base(int p, int q, const char* what);

// Half-open [index/p^rank, (index+1)/p^rank).
struct PAdicInterval {
  int p = 2;
  int rank = 0;
  Index index = 0;

  PAdicInterval(int p, int rank, Index index);
  Rational left() const;
  Rational right() const;
  Rational measure() const;
};

// Finite union of rank-k p-adic intervals, held as strictly increasing indices.
class PAdicSet {
public:
  PAdicSet(int p, int rank, std::vector<Index> indices);

  static PAdicSet empty(int p, int rank = 0);
  static PAdicSet full(int p, int rank = 0);
  static PAdicSet from_interval(const PAdicInterval& iv);

  int p() const { return p_; }
  int rank() const { return rank_; }
  std::span<const Index> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(Index j) const;

  PAdicSet refine(int rank) const;
  Rational measure() const;

  friend PAdicSet operator|(const PAdicSet& a, const PAdicSet& b);
  friend PAdicSet operator&(const PAdicSet& a, const PAdicSet& b);
  friend PAdicSet operator-(const PAdicSet& a, const PAdicSet& b);
  friend PAdicSet operator^(const PAdicSet& a, const PAdicSet& b);

  // Same point set (ranks may differ).
  friend bool operator==(const PAdicSet& a, const PAdicSet& b);

private:
  int p_;
  int rank_;
  std::vector<Index> indices_;
};

Rational symdiff_measure(const PAdicSet& a, const PAdicSet& b);

// Permutation of the rank-k intervals; interval j is translated onto perm[j].
class PAdicPermutation {
public:
  PAdicPermutation(int p, int rank, std::vector<Index> perm);

  static PAdicPermutation identity(int p, int rank = 0);
  // Rotation y -> y + shift/p^rank mod 1.
  static PAdicPermutation rotation(int p, int rank, Index shift);

  int p() const { return p_; }
  int rank() const { return rank_; }
  Index size() const { return perm_.size(); }
  Index operator[](Index j) const { return perm_[j]; }
  std::span<const Index> mapping() const { return perm_; }

  PAdicPermutation refine(int rank) const;
  PAdicPermutation inverse() const;
  PAdicPermutation power(long n) const;

  bool is_identity() const;
  // Least m >= 1 with this^m = identity.
  mpz_class order() const;
  // Cycles as index sequences, each starting at its least element, sorted.
  std::vector<std::vector<Index>> cycles() const;

  PAdicSet image(const PAdicSet& s) const;
  // Exact image of a point; points on rank-k cell boundaries throw BoundaryError.
  Rational apply(const Rational& x) const;

  // Same point map (ranks may differ).
  friend bool operator==(const PAdicPermutation& a, const PAdicPermutation& b);

private:
  int p_;
  int rank_;
  std::vector<Index> perm_;
};

// a ∘ b: apply b first.
PAdicPermutation compose(const PAdicPermutation& a, const PAdicPermutation& b);

// Max over rank-K intervals E of m(aE △ bE).
Rational weak_distance(const PAdicPermutation& a, const PAdicPermutation& b, int rank);

// Index of the rank-k cell containing x in [0,1); throws BoundaryError when
// x sits on a cell boundary.
Index cell_of(int p, int rank, const Rational& x);

}  // namespace skew
