#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "skewlab/interval_map.hpp"
#include "skewlab/padic.hpp"
#include "skewlab/rational.hpp"
#include "skewlab/skew_product.hpp"
#include "skewlab/translation_skew.hpp"

namespace skew {

// ---------------------------------------------------------------------------
// Rokhlin towers

// Levels B, T0 B, …, T0^{n-1} B, pairwise disjoint.
struct RokhlinTower {
  PAdicPermutation base;
  PAdicSet floor;  // B
  long height = 0;
  Rational residual;  // 1 − n·m(B)

  PAdicSet level(long i) const;
  Rational level_measure() const { return floor.measure(); }
};

// Base must be a single cycle on its rank-D intervals with length >= n. B is
// every n-th position along the cycle starting at interval 0, truncated so the
// n levels stay disjoint.
RokhlinTower rokhlin_tower(const PAdicPermutation& base, long height);

// Partition of X into the level sets of `cell` over rank-`rank` intervals.
struct Partition {
  int p = 2;
  int rank = 0;
  std::vector<std::size_t> cell;
};

// Tower refined by a partition: pieces B_l are single rank-R intervals of B and
// labels[l][i] = α(l, i) is the partition cell containing T0^i B_l.
struct RefinedTower {
  RokhlinTower tower;
  Partition partition;  // at the working rank
  int rank = 0;
  std::vector<Index> pieces;
  std::vector<std::vector<std::size_t>> labels;
};

RefinedTower refine_tower(const RokhlinTower& tower, const Partition& partition);

// Partition given by the fiber labels of a skew product.
Partition label_partition(const SkewProduct& t);

// ---------------------------------------------------------------------------
// Conjugator

struct ConjugatorResult {
  SkewProduct conjugator;  // S, identity base
  long levels_verified = 0;
  Rational bound;  // residual + m(top level)
};

// Builds S with S_x = 1_Y on B and off the tower and
// S_{T0 x} = T̂_x S_x R_{α(l,i)}^{-1} up the levels, so that
// (S⁻¹ T̂ S)_x = (T_target)_x on levels 0 … n−2. The identity is checked
// before returning.
ConjugatorResult hgw_conjugator(const SkewProduct& target, const SkewProduct& hat,
                                const RefinedTower& tower);

// Smallest tower height whose bound residual + m(top) is below eps.
// Throws ResolutionError naming the rank the base would need.
RokhlinTower choose_tower(const PAdicPermutation& base, const Rational& eps);

// ---------------------------------------------------------------------------
// p-adic approximation and periodic rigidification

struct Approximation {
  PAdicPermutation perm;
  Rational discrepancy;  // max over reference-rank F of ν(RF △ PF)
};

// Order-preserving snap of R at rank K: interval j goes to the rank of
// R(midpoint_j) among all midpoint images. A rotation snaps to the rotation
// by the nearest multiple of p^{-K}.
PAdicPermutation snap_to_rank(const IntervalMap& r, int p, int rank);

// P with max_F ν(RF △ PF) < eps over reference-rank intervals F. Exactly
// p-adic inputs are returned unchanged.
Approximation padic_approx(const IntervalMap& r, const Rational& eps, int p, int reference_rank);

struct RigidifyResult {
  SkewProduct q;
  Rational weak_distance;  // weak_distance(S, Q, K)
  int max_rank = 0;        // M
  mpz_class period;        // p^{M+1}, verified: Q^period = identity
};

// Smallest q > 1 with base^q = identity (0 when larger than the base size).
long point_period(const PAdicPermutation& base);

// Replaces each fiber R_k by padic_approx(R_k, eps / (2 N m(A_k))). Checks
// weak_distance(S, Q, K) < eps/2 and Q^{p^{M+1}} = identity exactly; a failed
// check throws FalsificationError.
RigidifyResult periodic_rigidify(const TranslationSkew& s, const Rational& eps, int reference_rank);

// ---------------------------------------------------------------------------
// Seeded sampling

// Platform-independent bounded draws over mt19937_64.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n);
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

PAdicPermutation sample_permutation(int p, int rank, Rng& rng);

struct SampleOptions {
  int fiber_rank = 1;
  std::size_t labels = 2;
  bool degenerate = false;  // force T0 × 1_Y
};

SkewProduct sample_skew(const PAdicPermutation& base, const SampleOptions& options,
                        std::uint64_t seed);

}  // namespace skew
