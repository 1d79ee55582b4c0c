#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

#include "skewlab/padic.hpp"
#include "skewlab/rational.hpp"
#include "skewlab/step_function.hpp"

namespace skew {

struct PointZ {
  Rational x;
  Rational y;
  friend bool operator==(const PointZ&, const PointZ&) = default;
};

// Piecewise constant skew product T(x, y) = (T0 x, T_x y) over a p-adic base
// permutation T0. T_x is constant on each rank-K_b base interval; the cell
// labels are an index into a deduplicated list of fiber permutations, all
// held at a common fiber rank.
//
// The stored form is canonical: fiber maps are distinct, every map is used,
// and maps are numbered in order of first use along the assignment.
class SkewProduct {
public:
  SkewProduct(PAdicPermutation base, std::vector<std::size_t> assignment,
              std::vector<PAdicPermutation> fiber_maps);

  // One fiber map per base cell of `base`.
  static SkewProduct from_cells(PAdicPermutation base, std::span<const PAdicPermutation> fibers);
  // T0 × 1_Y.
  static SkewProduct lift(const PAdicPermutation& base, int fiber_rank = 0);
  // 1_X × R.
  static SkewProduct fiber_constant(const PAdicPermutation& fiber);
  static SkewProduct identity(int p);

  int p() const { return base_.p(); }
  const PAdicPermutation& base() const { return base_; }
  int base_rank() const { return base_.rank(); }
  int fiber_rank() const { return fiber_maps_.front().rank(); }
  std::span<const std::size_t> assignment() const { return assignment_; }
  std::span<const PAdicPermutation> fiber_maps() const { return fiber_maps_; }
  std::size_t label_count() const { return fiber_maps_.size(); }
  const PAdicPermutation& fiber_at(Index base_cell) const {
    return fiber_maps_[assignment_[base_cell]];
  }

  SkewProduct refine(int base_rank, int fiber_rank) const;

  bool is_identity() const;
  bool has_identity_base() const { return base_.is_identity(); }
  // Least m >= 1 with T^m = identity.
  mpz_class order() const;

  // Exact image (T0 x, T_x y); points on cell boundaries throw BoundaryError.
  PointZ apply(const PointZ& z) const;

  // Same map of Z (ranks may differ).
  friend bool operator==(const SkewProduct& a, const SkewProduct& b);

private:
  PAdicPermutation base_;
  std::vector<std::size_t> assignment_;
  std::vector<PAdicPermutation> fiber_maps_;
};

// Finite-depth adding machine: add 1 with carry to the reversed base-p digit
// string of the interval index. A single p^D-cycle.
PAdicPermutation odometer(int p, int depth);

// a ∘ b: apply b first.
SkewProduct compose(const SkewProduct& a, const SkewProduct& b);
SkewProduct inverse(const SkewProduct& t);
// n-step cocycle evaluated per base cycle; negative n goes through the inverse.
SkewProduct power(const SkewProduct& t, long n);

// S^{-1} T S for S over the identity base; fiber law S_{T0 x}^{-1} T_x S_x.
SkewProduct conjugate(const SkewProduct& s, const SkewProduct& t);

// Koopman action T f = f ∘ T^{-1}, so that T χ_A = χ_{TA}.
StepFunctionZ koopman_pullback(const SkewProduct& t, const StepFunctionZ& f);
// Same convention on X: h ∘ T0^{-1}.
StepFunctionX koopman_pullback(const PAdicPermutation& base, const StepFunctionX& h);

// Max over rank-K squares D of μ(aD △ bD).
Rational weak_distance(const SkewProduct& a, const SkewProduct& b, int rank);

}  // namespace skew
