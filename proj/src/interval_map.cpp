#include "skewlab/interval_map.hpp"

#include <algorithm>

#include "skewlab/errors.hpp"

namespace skew {

namespace {

const Rational kZero(0);
const Rational kOne(1);

Rational grid_point(Index j, Index n) {
  return Rational(mpz_class(static_cast<unsigned long>(j)),
                  mpz_class(static_cast<unsigned long>(n)));
}

// Least k with den | p^k, or nullopt when den has a prime factor not dividing p.
std::optional<int> padic_exponent(const mpz_class& den, int p) {
  mpz_class d = den;
  const mpz_class pp(p);
  for (;;) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    if (g == 1) break;
    d /= g;
  }
  if (d != 1) return std::nullopt;
  int k = 0;
  mpz_class pk = 1;
  while (mpz_divisible_p(pk.get_mpz_t(), den.get_mpz_t()) == 0) {
    pk *= pp;
    ++k;
  }
  return k;
}

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Span> spans) {
  std::erase_if(spans, [](const Span& s) { return !(s.first < s.second); });
  std::sort(spans.begin(), spans.end());
  for (auto& s : spans) {
    if (!spans_.empty() && s.first <= spans_.back().second) {
      if (spans_.back().second < s.second) spans_.back().second = s.second;
    } else {
      spans_.push_back(std::move(s));
    }
  }
}

Rational IntervalUnion::measure() const {
  Rational m;
  for (const auto& [a, b] : spans_) m += b - a;
  return m;
}

IntervalUnion operator^(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Rational> cuts;
  for (const auto& [x, y] : a.spans_) { cuts.push_back(x); cuts.push_back(y); }
  for (const auto& [x, y] : b.spans_) { cuts.push_back(x); cuts.push_back(y); }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto covered = [](const std::vector<IntervalUnion::Span>& spans, std::size_t& i,
                    const Rational& lo) {
    while (i < spans.size() && spans[i].second <= lo) ++i;
    return i < spans.size() && spans[i].first <= lo;
  };
  std::vector<IntervalUnion::Span> out;
  std::size_t ia = 0, ib = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const bool in_a = covered(a.spans_, ia, cuts[c]);
    const bool in_b = covered(b.spans_, ib, cuts[c]);
    if (in_a != in_b) out.emplace_back(cuts[c], cuts[c + 1]);
  }
  return IntervalUnion(std::move(out));
}

Rational symdiff_measure(const IntervalUnion& a, const IntervalUnion& b) {
  return (a ^ b).measure();
}

// ---------------------------------------------------------------------------

IntervalMap::IntervalMap(std::vector<Piece> pieces) {
  if (pieces.empty()) throw DomainError("interval map needs at least one piece");
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.start < b.start; });
  Rational cursor = kZero;
  for (const auto& pc : pieces) {
    if (pc.start != cursor) throw DomainError("interval map pieces must tile [0,1)");
    if (!(pc.start < pc.end)) throw DomainError("interval map piece is empty");
    cursor = pc.end;
  }
  if (cursor != kOne) throw DomainError("interval map pieces must tile [0,1)");

  std::vector<std::pair<Rational, Rational>> images;
  for (const auto& pc : pieces) images.emplace_back(pc.start + pc.shift, pc.end + pc.shift);
  std::sort(images.begin(), images.end());
  cursor = kZero;
  for (const auto& [a, b] : images) {
    if (a != cursor) throw DomainError("interval map is not measure-preserving and invertible");
    cursor = b;
  }
  if (cursor != kOne) throw DomainError("interval map is not measure-preserving and invertible");

  for (auto& pc : pieces) {
    if (!pieces_.empty() && pieces_.back().shift == pc.shift) {
      pieces_.back().end = pc.end;
    } else {
      pieces_.push_back(std::move(pc));
    }
  }
}

IntervalMap IntervalMap::identity() { return IntervalMap({{kZero, kOne, kZero}}); }

IntervalMap IntervalMap::rotation(const Rational& alpha) {
  Rational a = alpha - Rational(alpha.floor());
  if (a.is_zero()) return identity();
  return IntervalMap({{kZero, kOne - a, a}, {kOne - a, kOne, a - kOne}});
}

IntervalMap IntervalMap::from_padic(const PAdicPermutation& perm) {
  const Index n = perm.size();
  std::vector<Piece> pieces;
  pieces.reserve(n);
  for (Index j = 0; j < n; ++j) {
    pieces.push_back({grid_point(j, n), grid_point(j + 1, n),
                      Rational(mpz_class(static_cast<long>(perm[j]) - static_cast<long>(j)),
                               mpz_class(static_cast<unsigned long>(n)))});
  }
  return IntervalMap(std::move(pieces));
}

IntervalMap IntervalMap::exchange(std::span<const Rational> lengths,
                                  std::span<const std::size_t> image_order) {
  if (lengths.size() != image_order.size()) {
    throw DomainError("exchange: lengths and image order differ in size");
  }
  std::vector<Rational> image_start(lengths.size());
  std::vector<char> used(lengths.size(), 0);
  Rational cursor;
  for (std::size_t k : image_order) {
    if (k >= lengths.size() || used[k]) throw DomainError("exchange: image order is not a permutation");
    used[k] = 1;
    image_start[k] = cursor;
    cursor += lengths[k];
  }
  std::vector<Piece> pieces;
  cursor = kZero;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    pieces.push_back({cursor, cursor + lengths[i], image_start[i] - cursor});
    cursor += lengths[i];
  }
  return IntervalMap(std::move(pieces));
}

Rational IntervalMap::apply(const Rational& y) const {
  if (y.sign() < 0 || y >= kOne) throw DomainError("point outside [0,1): " + y.str());
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), y,
                             [](const Rational& v, const Piece& pc) { return v < pc.start; });
  --it;
  return y + it->shift;
}

IntervalUnion IntervalMap::image(const Rational& a, const Rational& b) const {
  std::vector<IntervalUnion::Span> out;
  for (const auto& pc : pieces_) {
    const Rational& lo = std::max(a, pc.start);
    const Rational& hi = std::min(b, pc.end);
    if (lo < hi) out.emplace_back(lo + pc.shift, hi + pc.shift);
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalMap::image(const IntervalUnion& u) const {
  std::vector<IntervalUnion::Span> out;
  for (const auto& [a, b] : u.spans()) {
    auto part = image(a, b);
    out.insert(out.end(), part.spans().begin(), part.spans().end());
  }
  return IntervalUnion(std::move(out));
}

IntervalMap IntervalMap::inverse() const {
  std::vector<Piece> inv;
  inv.reserve(pieces_.size());
  for (const auto& pc : pieces_) inv.push_back({pc.start + pc.shift, pc.end + pc.shift, -pc.shift});
  return IntervalMap(std::move(inv));
}

bool IntervalMap::is_identity() const {
  return pieces_.size() == 1 && pieces_.front().shift.is_zero();
}

std::optional<PAdicPermutation> IntervalMap::to_padic(int p) const {
  check_base(p);
  int k = 0;
  for (const auto& pc : pieces_) {
    for (const Rational* r : {&pc.start, &pc.shift}) {
      auto e = padic_exponent(r->denominator(), p);
      if (!e) return std::nullopt;
      k = std::max(k, *e);
    }
  }
  if (k > Limits::max_rank(p)) return std::nullopt;
  const Index n = cells(p, k);
  const Rational scale(mpz_class(static_cast<unsigned long>(n)));
  std::vector<Index> perm(n);
  for (Index j = 0; j < n; ++j) {
    perm[j] = static_cast<Index>((apply(grid_point(j, n)) * scale).floor().get_ui());
  }
  return PAdicPermutation(p, k, std::move(perm));
}

IntervalMap compose(const IntervalMap& a, const IntervalMap& b) {
  std::vector<IntervalMap::Piece> out;
  for (const auto& pb : b.pieces()) {
    const Rational lo = pb.start + pb.shift;
    const Rational hi = pb.end + pb.shift;
    for (const auto& pa : a.pieces()) {
      const Rational& x0 = std::max(lo, pa.start);
      const Rational& x1 = std::min(hi, pa.end);
      if (x0 < x1) out.push_back({x0 - pb.shift, x1 - pb.shift, pb.shift + pa.shift});
    }
  }
  return IntervalMap(std::move(out));
}

Rational weak_distance(const IntervalMap& a, const IntervalMap& b, int p, int rank) {
  const Index n = cells(p, rank);
  Rational worst;
  for (Index j = 0; j < n; ++j) {
    const Rational lo = grid_point(j, n);
    const Rational hi = grid_point(j + 1, n);
    worst = std::max(worst, symdiff_measure(a.image(lo, hi), b.image(lo, hi)));
  }
  return worst;
}

}  // namespace skew
