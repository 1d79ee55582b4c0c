#include "skewlab/translation_skew.hpp"

#include <algorithm>
#include <string>

#include "skewlab/errors.hpp"

namespace skew {

TranslationSkew::TranslationSkew(PAdicPermutation base, std::vector<std::size_t> assignment,
                                 std::vector<IntervalMap> maps)
    : base_(std::move(base)) {
  if (maps.empty()) throw DomainError("translation skew needs at least one fiber map");
  if (assignment.size() != base_.size()) throw DomainError("assignment size differs from base cell count");
  std::vector<std::size_t> relabel(maps.size(), static_cast<std::size_t>(-1));
  for (std::size_t label : assignment) {
    if (label >= maps.size()) {
      throw DomainError("assignment label " + std::to_string(label) + " has no fiber map");
    }
    if (relabel[label] == static_cast<std::size_t>(-1)) {
      auto it = std::find(maps_.begin(), maps_.end(), maps[label]);
      relabel[label] = static_cast<std::size_t>(it - maps_.begin());
      if (it == maps_.end()) maps_.push_back(maps[label]);
    }
    assignment_.push_back(relabel[label]);
  }
}

TranslationSkew TranslationSkew::from_skew(const SkewProduct& t) {
  std::vector<IntervalMap> maps;
  for (const auto& m : t.fiber_maps()) maps.push_back(IntervalMap::from_padic(m));
  return TranslationSkew(t.base(), std::vector<std::size_t>(t.assignment().begin(), t.assignment().end()),
                         std::move(maps));
}

Rational TranslationSkew::label_measure(std::size_t label) const {
  auto count = std::count(assignment_.begin(), assignment_.end(), label);
  return Rational(mpz_class(static_cast<long>(count)),
                  mpz_class(static_cast<unsigned long>(assignment_.size())));
}

TranslationSkew TranslationSkew::refine_base(int rank) const {
  PAdicPermutation b = base_.refine(rank);
  const Index f = b.size() / base_.size();
  std::vector<std::size_t> labels(b.size());
  for (Index i = 0; i < b.size(); ++i) labels[i] = assignment_[i / f];
  return TranslationSkew(std::move(b), std::move(labels), maps_);
}

std::optional<SkewProduct> TranslationSkew::to_skew() const {
  std::vector<PAdicPermutation> perms;
  for (const auto& m : maps_) {
    auto pm = m.to_padic(p());
    if (!pm) return std::nullopt;
    perms.push_back(std::move(*pm));
  }
  return SkewProduct(base_, assignment_, std::move(perms));
}

Rational weak_distance(const TranslationSkew& a, const TranslationSkew& b, int rank) {
  require_same_base(a.p(), b.p(), "weak_distance");
  const int w = std::max({rank, a.base().rank(), b.base().rank()});
  const TranslationSkew ra = a.refine_base(w);
  const TranslationSkew rb = b.refine_base(w);
  const PAdicPermutation inv_a = ra.base().inverse();
  const PAdicPermutation inv_b = rb.base().inverse();
  const Index n = cells(a.p(), w);
  const Index groups = cells(a.p(), rank);
  const Index f = n / groups;
  const Rational cell_measure(mpz_class(1), mpz_class(static_cast<unsigned long>(n)));
  const Rational side(mpz_class(1), mpz_class(static_cast<unsigned long>(groups)));

  Rational worst;
  for (Index fj = 0; fj < groups; ++fj) {
    const Rational lo = side * Rational(static_cast<long>(fj));
    const Rational hi = lo + side;
    // Images of F_j under every fiber map, computed once per map.
    std::vector<IntervalUnion> img_a, img_b;
    for (const auto& m : ra.maps()) img_a.push_back(m.image(lo, hi));
    for (const auto& m : rb.maps()) img_b.push_back(m.image(lo, hi));
    for (Index ei = 0; ei < groups; ++ei) {
      Rational total;
      for (Index target = 0; target < n; ++target) {
        const Index xa = inv_a[target];
        const Index xb = inv_b[target];
        const bool in_a = xa / f == ei;
        const bool in_b = xb / f == ei;
        if (!in_a && !in_b) continue;
        const IntervalUnion empty;
        const IntervalUnion& ua = in_a ? img_a[ra.assignment()[xa]] : empty;
        const IntervalUnion& ub = in_b ? img_b[rb.assignment()[xb]] : empty;
        total += symdiff_measure(ua, ub);
      }
      worst = std::max(worst, total * cell_measure);
    }
  }
  return worst;
}

}  // namespace skew
