#include "skewlab/skew_product.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "skewlab/errors.hpp"

namespace skew {

SkewProduct::SkewProduct(PAdicPermutation base, std::vector<std::size_t> assignment,
                         std::vector<PAdicPermutation> fiber_maps)
    : base_(std::move(base)) {
  if (fiber_maps.empty()) throw DomainError("skew product needs at least one fiber map");
  if (assignment.size() != base_.size()) {
    throw DomainError("assignment has " + std::to_string(assignment.size()) +
                      " labels for " + std::to_string(base_.size()) + " base cells");
  }
  int fr = 0;
  for (const auto& m : fiber_maps) {
    require_same_base(base_.p(), m.p(), "skew product fiber");
    fr = std::max(fr, m.rank());
  }
  for (std::size_t label : assignment) {
    if (label >= fiber_maps.size()) {
      throw DomainError("assignment label " + std::to_string(label) + " has no fiber map");
    }
  }

  // Canonical form: dedupe at the common rank and number maps by first use.
  std::map<std::vector<Index>, std::size_t> seen;
  std::vector<std::size_t> relabel(fiber_maps.size(), static_cast<std::size_t>(-1));
  assignment_.reserve(assignment.size());
  for (std::size_t label : assignment) {
    if (relabel[label] == static_cast<std::size_t>(-1)) {
      PAdicPermutation m = fiber_maps[label].refine(fr);
      std::vector<Index> key(m.mapping().begin(), m.mapping().end());
      auto [it, inserted] = seen.emplace(std::move(key), fiber_maps_.size());
      if (inserted) fiber_maps_.push_back(std::move(m));
      relabel[label] = it->second;
    }
    assignment_.push_back(relabel[label]);
  }
}

SkewProduct SkewProduct::from_cells(PAdicPermutation base, std::span<const PAdicPermutation> fibers) {
  std::vector<std::size_t> labels(fibers.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
  return SkewProduct(std::move(base), std::move(labels),
                     std::vector<PAdicPermutation>(fibers.begin(), fibers.end()));
}

SkewProduct SkewProduct::lift(const PAdicPermutation& base, int fiber_rank) {
  return SkewProduct(base, std::vector<std::size_t>(base.size(), 0),
                     {PAdicPermutation::identity(base.p(), fiber_rank)});
}

SkewProduct SkewProduct::fiber_constant(const PAdicPermutation& fiber) {
  return SkewProduct(PAdicPermutation::identity(fiber.p(), 0), {0}, {fiber});
}

SkewProduct SkewProduct::identity(int p) {
  return lift(PAdicPermutation::identity(p, 0), 0);
}

SkewProduct SkewProduct::refine(int base_rank, int fiber_rank) const {
  PAdicPermutation b = base_.refine(base_rank);
  const Index f = b.size() / base_.size();
  std::vector<std::size_t> labels(b.size());
  for (Index i = 0; i < b.size(); ++i) labels[i] = assignment_[i / f];
  std::vector<PAdicPermutation> maps;
  maps.reserve(fiber_maps_.size());
  for (const auto& m : fiber_maps_) maps.push_back(m.refine(fiber_rank));
  return SkewProduct(std::move(b), std::move(labels), std::move(maps));
}

bool SkewProduct::is_identity() const {
  return base_.is_identity() &&
         std::all_of(fiber_maps_.begin(), fiber_maps_.end(),
                     [](const PAdicPermutation& m) { return m.is_identity(); });
}

mpz_class SkewProduct::order() const {
  mpz_class l = 1;
  for (const auto& cyc : base_.cycles()) {
    PAdicPermutation around = PAdicPermutation::identity(p(), fiber_rank());
    for (Index c : cyc) around = compose(fiber_at(c), around);
    mpz_class len = around.order() * static_cast<unsigned long>(cyc.size());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), len.get_mpz_t());
  }
  return l;
}

PointZ SkewProduct::apply(const PointZ& z) const {
  const Index cell = cell_of(p(), base_rank(), z.x);
  // Fiber boundary check happens inside apply.
  return {base_.apply(z.x), fiber_at(cell).apply(z.y)};
}

bool operator==(const SkewProduct& a, const SkewProduct& b) {
  if (a.p() != b.p()) return false;
  const int br = std::max(a.base_rank(), b.base_rank());
  const int fr = std::max(a.fiber_rank(), b.fiber_rank());
  const SkewProduct ra = a.refine(br, fr);
  const SkewProduct rb = b.refine(br, fr);
  if (!(ra.base() == rb.base())) return false;
  for (Index i = 0; i < ra.base().size(); ++i) {
    if (!(ra.fiber_at(i) == rb.fiber_at(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PAdicPermutation odometer(int p, int depth) {
  if (depth < 1) throw DomainError("odometer depth must be >= 1");
  const Index n = cells(p, depth);
  std::vector<Index> perm(n);
  const Index top = n / static_cast<Index>(p);
  for (Index j = 0; j < n; ++j) {
    Index v = j;
    for (Index pos = top; pos > 0; pos /= static_cast<Index>(p)) {
      const Index digit = (v / pos) % static_cast<Index>(p);
      if (digit + 1 < static_cast<Index>(p)) {
        v += pos;
        break;
      }
      v -= digit * pos;  // carry
    }
    perm[j] = v;
  }
  return PAdicPermutation(p, depth, std::move(perm));
}

SkewProduct compose(const SkewProduct& a, const SkewProduct& b) {
  require_same_base(a.p(), b.p(), "compose");
  const int br = std::max(a.base_rank(), b.base_rank());
  const int fr = std::max(a.fiber_rank(), b.fiber_rank());
  const SkewProduct ra = a.refine(br, fr);
  const SkewProduct rb = b.refine(br, fr);
  std::vector<PAdicPermutation> fibers;
  fibers.reserve(rb.base().size());
  for (Index i = 0; i < rb.base().size(); ++i) {
    fibers.push_back(compose(ra.fiber_at(rb.base()[i]), rb.fiber_at(i)));
  }
  return SkewProduct::from_cells(compose(ra.base(), rb.base()), fibers);
}

SkewProduct inverse(const SkewProduct& t) {
  const PAdicPermutation inv = t.base().inverse();
  std::vector<PAdicPermutation> fibers;
  fibers.reserve(inv.size());
  for (Index i = 0; i < inv.size(); ++i) fibers.push_back(t.fiber_at(inv[i]).inverse());
  return SkewProduct::from_cells(inv, fibers);
}

SkewProduct power(const SkewProduct& t, long n) {
  if (n < 0) return power(inverse(t), -n);
  const unsigned long steps = static_cast<unsigned long>(n);
  const int p = t.p();
  const int fr = t.fiber_rank();
  std::vector<PAdicPermutation> fibers(t.base().size(), PAdicPermutation::identity(p, fr));
  for (const auto& cyc : t.base().cycles()) {
    const std::size_t len = cyc.size();
    // prefix[s] = T_{c_{s-1}} ∘ … ∘ T_{c_0}; prefix[len] is the return map at c_0.
    std::vector<PAdicPermutation> prefix;
    prefix.reserve(len + 1);
    prefix.push_back(PAdicPermutation::identity(p, fr));
    for (std::size_t s = 0; s < len; ++s) prefix.push_back(compose(t.fiber_at(cyc[s]), prefix.back()));
    const PAdicPermutation& around = prefix[len];
    // The n-step cocycle at c_s is G(s + n) ∘ G(s)^{-1} with G(qL + r) = prefix[r] ∘ around^q.
    for (std::size_t s = 0; s < len; ++s) {
      const unsigned long end = s + steps;
      const long q = static_cast<long>(end / len);
      const std::size_t r = end % len;
      fibers[cyc[s]] = compose(compose(prefix[r], around.power(q)), prefix[s].inverse());
    }
  }
  return SkewProduct::from_cells(t.base().power(n), fibers);
}

SkewProduct conjugate(const SkewProduct& s, const SkewProduct& t) {
  require_same_base(s.p(), t.p(), "conjugate");
  if (!s.has_identity_base()) {
    throw DomainError("conjugator must have identity base (it has to fix the factor)");
  }
  const int br = std::max(s.base_rank(), t.base_rank());
  const int fr = std::max(s.fiber_rank(), t.fiber_rank());
  const SkewProduct rs = s.refine(br, fr);
  const SkewProduct rt = t.refine(br, fr);
  std::vector<PAdicPermutation> fibers;
  fibers.reserve(rt.base().size());
  for (Index i = 0; i < rt.base().size(); ++i) {
    const PAdicPermutation& s_after = rs.fiber_at(rt.base()[i]);
    fibers.push_back(compose(s_after.inverse(), compose(rt.fiber_at(i), rs.fiber_at(i))));
  }
  return SkewProduct::from_cells(rt.base(), fibers);
}

StepFunctionZ koopman_pullback(const SkewProduct& t, const StepFunctionZ& f) {
  require_same_base(t.p(), f.p(), "koopman_pullback");
  const int w = std::max({f.rank(), t.base_rank(), t.fiber_rank()});
  const SkewProduct rt = t.refine(w, w);
  const StepFunctionZ rf = f.refine(w);
  const Index n = rf.side();
  std::vector<Rational> out(n * n);
  for (Index i = 0; i < n; ++i) {
    const Index ti = rt.base()[i];
    const PAdicPermutation& fib = rt.fiber_at(i);
    for (Index j = 0; j < n; ++j) out[ti * n + fib[j]] = rf.at(i, j);
  }
  return StepFunctionZ(f.p(), w, std::move(out));
}

StepFunctionX koopman_pullback(const PAdicPermutation& base, const StepFunctionX& h) {
  require_same_base(base.p(), h.p(), "koopman_pullback");
  const int w = std::max(base.rank(), h.rank());
  const PAdicPermutation rb = base.refine(w);
  const StepFunctionX rh = h.refine(w);
  std::vector<Rational> out(rh.size());
  for (Index i = 0; i < rh.size(); ++i) out[rb[i]] = rh[i];
  return StepFunctionX(h.p(), w, std::move(out));
}

Rational weak_distance(const SkewProduct& a, const SkewProduct& b, int rank) {
  require_same_base(a.p(), b.p(), "weak_distance");
  const int w = std::max({rank, a.base_rank(), a.fiber_rank(), b.base_rank(), b.fiber_rank()});
  const SkewProduct ra = a.refine(w, w);
  const SkewProduct rb = b.refine(w, w);
  const Index n = cells(a.p(), w);
  const Index groups = cells(a.p(), rank);
  const Index f = n / groups;
  std::vector<char> mark(n * n, 0);
  Index worst = 0;
  auto for_each_cell = [&](Index ei, Index fj, auto&& fn) {
    for (Index ci = 0; ci < f; ++ci) {
      for (Index cj = 0; cj < f; ++cj) fn(ei * f + ci, fj * f + cj);
    }
  };
  for (Index ei = 0; ei < groups; ++ei) {
    for (Index fj = 0; fj < groups; ++fj) {
      for_each_cell(ei, fj, [&](Index x, Index y) { mark[ra.base()[x] * n + ra.fiber_at(x)[y]] = 1; });
      Index common = 0;
      for_each_cell(ei, fj, [&](Index x, Index y) {
        common += mark[rb.base()[x] * n + rb.fiber_at(x)[y]] ? 1 : 0;
      });
      for_each_cell(ei, fj, [&](Index x, Index y) { mark[ra.base()[x] * n + ra.fiber_at(x)[y]] = 0; });
      worst = std::max(worst, 2 * (f * f - common));
    }
  }
  return Rational(mpz_class(static_cast<unsigned long>(worst)),
                  mpz_class(static_cast<unsigned long>(n * n)));
}

}  // namespace skew
