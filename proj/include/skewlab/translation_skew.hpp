#pragma once

#include <optional>
#include <span>
#include <vector>

#include "skewlab/interval_map.hpp"
#include "skewlab/padic.hpp"
#include "skewlab/skew_product.hpp"

namespace skew {

// Piecewise constant skew product over a p-adic base whose fiber maps are
// arbitrary piecewise translations of Y (not necessarily p-adic). This is the
// input class of the periodic rigidification.
class TranslationSkew {
public:
  TranslationSkew(PAdicPermutation base, std::vector<std::size_t> assignment,
                  std::vector<IntervalMap> maps);

  static TranslationSkew from_skew(const SkewProduct& t);

  int p() const { return base_.p(); }
  const PAdicPermutation& base() const { return base_; }
  std::span<const std::size_t> assignment() const { return assignment_; }
  std::span<const IntervalMap> maps() const { return maps_; }
  std::size_t label_count() const { return maps_.size(); }
  const IntervalMap& fiber_at(Index cell) const { return maps_[assignment_[cell]]; }
  // m(A_k): measure of the base cells carrying label k.
  Rational label_measure(std::size_t label) const;

  TranslationSkew refine_base(int rank) const;
  // The p-adic skew product with the same maps, when every map is p-adic.
  std::optional<SkewProduct> to_skew() const;

private:
  PAdicPermutation base_;
  std::vector<std::size_t> assignment_;
  std::vector<IntervalMap> maps_;
};

// Max over rank-K squares D of μ(aD △ bD), by Fubini over base cells.
Rational weak_distance(const TranslationSkew& a, const TranslationSkew& b, int rank);

}  // namespace skew
