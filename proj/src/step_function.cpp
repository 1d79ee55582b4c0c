#include "skewlab/step_function.hpp"

#include <algorithm>

#include "skewlab/errors.hpp"

namespace skew {

namespace {

Rational inv_count(Index n) {
  return Rational(mpz_class(1), mpz_class(static_cast<unsigned long>(n)));
}

template <class F>
std::vector<Rational> zip(std::span<const Rational> a, std::span<const Rational> b, F f) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return out;
}

}  // namespace

StepFunctionX::StepFunctionX(int p, int rank, std::vector<Rational> values)
    : p_(p), rank_(rank), values_(std::move(values)) {
  if (values_.size() != cells(p, rank)) throw DomainError("step function on X has wrong size");
}

StepFunctionX StepFunctionX::constant(int p, int rank, const Rational& c) {
  return StepFunctionX(p, rank, std::vector<Rational>(cells(p, rank), c));
}

StepFunctionX StepFunctionX::indicator(const PAdicSet& s) {
  std::vector<Rational> v(cells(s.p(), s.rank()));
  for (Index j : s.indices()) v[j] = 1;
  return StepFunctionX(s.p(), s.rank(), std::move(v));
}

StepFunctionX StepFunctionX::refine(int rank) const {
  if (rank < rank_) throw RankError("cannot refine step function to a lower rank");
  if (rank == rank_) return *this;
  const Index f = cells(p_, rank) / values_.size();
  std::vector<Rational> out;
  out.reserve(values_.size() * f);
  for (const auto& v : values_) out.insert(out.end(), f, v);
  return StepFunctionX(p_, rank, std::move(out));
}

Rational StepFunctionX::integral() const {
  Rational s;
  for (const auto& v : values_) s += v;
  return s * inv_count(values_.size());
}

Rational StepFunctionX::l2_norm_sq() const {
  Rational s;
  for (const auto& v : values_) s += v * v;
  return s * inv_count(values_.size());
}

Rational StepFunctionX::l1_norm() const {
  Rational s;
  for (const auto& v : values_) s += v.abs();
  return s * inv_count(values_.size());
}

Rational StepFunctionX::sup_norm() const {
  Rational m;
  for (const auto& v : values_) m = std::max(m, v.abs());
  return m;
}

bool StepFunctionX::is_constant(const Rational& c) const {
  return std::all_of(values_.begin(), values_.end(), [&](const Rational& v) { return v == c; });
}

StepFunctionX StepFunctionX::scale(const Rational& c) const {
  std::vector<Rational> out(values_);
  for (auto& v : out) v *= c;
  return StepFunctionX(p_, rank_, std::move(out));
}

namespace {

template <class F>
StepFunctionX binary_x(const StepFunctionX& a, const StepFunctionX& b, F f) {
  require_same_base(a.p(), b.p(), "step function algebra");
  const int r = std::max(a.rank(), b.rank());
  auto ra = a.refine(r);
  auto rb = b.refine(r);
  return StepFunctionX(a.p(), r, zip(ra.values(), rb.values(), f));
}

}  // namespace

StepFunctionX operator+(const StepFunctionX& a, const StepFunctionX& b) {
  return binary_x(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}
StepFunctionX operator-(const StepFunctionX& a, const StepFunctionX& b) {
  return binary_x(a, b, [](const Rational& x, const Rational& y) { return x - y; });
}
StepFunctionX operator*(const StepFunctionX& a, const StepFunctionX& b) {
  return binary_x(a, b, [](const Rational& x, const Rational& y) { return x * y; });
}

bool operator==(const StepFunctionX& a, const StepFunctionX& b) {
  if (a.p() != b.p()) return false;
  const int r = std::max(a.rank(), b.rank());
  auto ra = a.refine(r);
  auto rb = b.refine(r);
  return std::equal(ra.values().begin(), ra.values().end(), rb.values().begin());
}

// ---------------------------------------------------------------------------

StepFunctionZ::StepFunctionZ(int p, int rank, std::vector<Rational> values)
    : p_(p), rank_(rank), side_(cells(p, rank)), values_(std::move(values)) {
  if (values_.size() != side_ * side_) throw DomainError("step function on Z has wrong size");
}

StepFunctionZ StepFunctionZ::constant(int p, int rank, const Rational& c) {
  const Index n = cells(p, rank);
  return StepFunctionZ(p, rank, std::vector<Rational>(n * n, c));
}

StepFunctionZ StepFunctionZ::indicator(std::span<const Rectangle> rects) {
  if (rects.empty()) throw DomainError("indicator of an empty rectangle list needs a base; use constant 0");
  const int p = rects.front().x.p();
  int r = 0;
  for (const auto& rc : rects) {
    require_same_base(p, rc.x.p(), "indicator");
    require_same_base(p, rc.y.p(), "indicator");
    r = std::max({r, rc.x.rank(), rc.y.rank()});
  }
  const Index n = cells(p, r);
  std::vector<Rational> v(n * n);
  for (const auto& rc : rects) {
    auto xs = rc.x.refine(r);
    auto ys = rc.y.refine(r);
    for (Index i : xs.indices()) {
      for (Index j : ys.indices()) v[i * n + j] = 1;
    }
  }
  return StepFunctionZ(p, r, std::move(v));
}

StepFunctionZ StepFunctionZ::indicator(const Rectangle& rect) {
  return indicator(std::span<const Rectangle>(&rect, 1));
}

StepFunctionZ StepFunctionZ::square(int p, int rank, Index i, Index j) {
  const Index n = cells(p, rank);
  if (i >= n || j >= n) throw DomainError("square index out of range");
  std::vector<Rational> v(n * n);
  v[i * n + j] = 1;
  return StepFunctionZ(p, rank, std::move(v));
}

StepFunctionZ StepFunctionZ::half_fiber(int p) {
  if (p % 2 != 0) throw DomainError("X × [0,1/2) is not a p-adic set for odd p");
  std::vector<Index> lower(static_cast<std::size_t>(p / 2));
  for (Index j = 0; j < lower.size(); ++j) lower[j] = j;
  return indicator(Rectangle{PAdicSet::full(p, 1), PAdicSet(p, 1, std::move(lower))});
}

StepFunctionZ StepFunctionZ::from_base(const StepFunctionX& h) {
  const Index n = h.size();
  std::vector<Rational> v;
  v.reserve(n * n);
  for (Index i = 0; i < n; ++i) v.insert(v.end(), n, h[i]);
  return StepFunctionZ(h.p(), h.rank(), std::move(v));
}

StepFunctionZ StepFunctionZ::refine(int rank) const {
  if (rank < rank_) throw RankError("cannot refine step function to a lower rank");
  if (rank == rank_) return *this;
  const Index n = cells(p_, rank);
  const Index f = n / side_;
  std::vector<Rational> out(n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) out[i * n + j] = at(i / f, j / f);
  }
  return StepFunctionZ(p_, rank, std::move(out));
}

Rational StepFunctionZ::integral() const {
  Rational s;
  for (const auto& v : values_) s += v;
  return s * inv_count(values_.size());
}

Rational StepFunctionZ::l2_norm_sq() const {
  Rational s;
  for (const auto& v : values_) s += v * v;
  return s * inv_count(values_.size());
}

Rational StepFunctionZ::l1_norm() const {
  Rational s;
  for (const auto& v : values_) s += v.abs();
  return s * inv_count(values_.size());
}

Rational StepFunctionZ::sup_norm() const {
  Rational m;
  for (const auto& v : values_) m = std::max(m, v.abs());
  return m;
}

bool StepFunctionZ::is_indicator() const {
  const Rational one(1);
  return std::all_of(values_.begin(), values_.end(),
                     [&](const Rational& v) { return v.is_zero() || v == one; });
}

StepFunctionZ StepFunctionZ::scale(const Rational& c) const {
  std::vector<Rational> out(values_);
  for (auto& v : out) v *= c;
  return StepFunctionZ(p_, rank_, std::move(out));
}

namespace {

template <class F>
StepFunctionZ binary_z(const StepFunctionZ& a, const StepFunctionZ& b, F f) {
  require_same_base(a.p(), b.p(), "step function algebra");
  const int r = std::max(a.rank(), b.rank());
  auto ra = a.refine(r);
  auto rb = b.refine(r);
  return StepFunctionZ(a.p(), r, zip(ra.values(), rb.values(), f));
}

}  // namespace

StepFunctionZ operator+(const StepFunctionZ& a, const StepFunctionZ& b) {
  return binary_z(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}
StepFunctionZ operator-(const StepFunctionZ& a, const StepFunctionZ& b) {
  return binary_z(a, b, [](const Rational& x, const Rational& y) { return x - y; });
}
StepFunctionZ operator*(const StepFunctionZ& a, const StepFunctionZ& b) {
  return binary_z(a, b, [](const Rational& x, const Rational& y) { return x * y; });
}

bool operator==(const StepFunctionZ& a, const StepFunctionZ& b) {
  if (a.p() != b.p()) return false;
  const int r = std::max(a.rank(), b.rank());
  auto ra = a.refine(r);
  auto rb = b.refine(r);
  return std::equal(ra.values().begin(), ra.values().end(), rb.values().begin());
}

}  // namespace skew
