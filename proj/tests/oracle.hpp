#pragma once

// Brute-force reference evaluator used only by the tests. It reads the raw
// tables of a skew product once and then works on square centres with plain
// rational translations, never touching compose/power/koopman from the library.

#include <map>
#include <utility>
#include <vector>

#include "skewlab/rational.hpp"
#include "skewlab/skew_product.hpp"
#include "skewlab/step_function.hpp"

namespace oracle {

using skew::Index;
using skew::Rational;

struct RawSkew {
  int p = 2;
  Index base_cells = 1;
  std::vector<Index> base;
  Index fiber_cells = 1;
  std::vector<std::vector<Index>> fibers;  // per base cell
};

inline RawSkew raw(const skew::SkewProduct& t) {
  RawSkew r;
  r.p = t.p();
  r.base_cells = t.base().size();
  r.base.assign(t.base().mapping().begin(), t.base().mapping().end());
  r.fiber_cells = t.fiber_maps().front().size();
  for (Index i = 0; i < r.base_cells; ++i) {
    const auto& m = t.fiber_at(i);
    r.fibers.emplace_back(m.mapping().begin(), m.mapping().end());
  }
  return r;
}

inline Index floor_index(const Rational& v, Index cells) {
  return static_cast<Index>((v * Rational(static_cast<long>(cells))).floor().get_ui());
}

inline std::pair<Rational, Rational> apply(const RawSkew& t, const Rational& x, const Rational& y) {
  const Index i = floor_index(x, t.base_cells);
  const Index j = floor_index(y, t.fiber_cells);
  const Rational dx(static_cast<long>(t.base[i]) - static_cast<long>(i), static_cast<long>(t.base_cells));
  const Index fj = t.fibers[i][j];
  const Rational dy(static_cast<long>(fj) - static_cast<long>(j), static_cast<long>(t.fiber_cells));
  return {x + dx, y + dy};
}

inline std::pair<Rational, Rational> apply_n(const RawSkew& t, Rational x, Rational y, long n) {
  for (long s = 0; s < n; ++s) std::tie(x, y) = apply(t, x, y);
  return {x, y};
}

// Values of f at rank-w square (i, j), with f given at its own rank.
inline Rational value_at(const skew::StepFunctionZ& f, Index i, Index j, Index side) {
  const Index fs = f.side();
  return f.at(i * fs / side, j * fs / side);
}

// (T^n f)(z) = f(T^{-n} z) on rank-w squares: push each centre forward and
// record f at its origin. w must resolve f and T.
inline std::vector<Rational> pushforward(const RawSkew& t, const skew::StepFunctionZ& f, long n,
                                         Index side) {
  std::vector<Rational> out(side * side);
  const long two_side = 2 * static_cast<long>(side);
  for (Index i = 0; i < side; ++i) {
    for (Index j = 0; j < side; ++j) {
      Rational cx(2 * static_cast<long>(i) + 1, two_side);
      Rational cy(2 * static_cast<long>(j) + 1, two_side);
      auto [x, y] = apply_n(t, cx, cy, n);
      out[floor_index(x, side) * side + floor_index(y, side)] = value_at(f, i, j, side);
    }
  }
  return out;
}

// E(T^n f · g | X) on rank-w base cells.
inline std::vector<Rational> correlation(const RawSkew& t, const skew::StepFunctionZ& f,
                                         const skew::StepFunctionZ& g, long n, Index side) {
  const auto moved = pushforward(t, f, n, side);
  std::vector<Rational> out(side);
  for (Index i = 0; i < side; ++i) {
    Rational s;
    for (Index j = 0; j < side; ++j) s += moved[i * side + j] * value_at(g, i, j, side);
    out[i] = s / Rational(static_cast<long>(side));
  }
  return out;
}

inline RawSkew lifted_base(const RawSkew& t) {
  RawSkew r = t;
  r.fiber_cells = 1;
  r.fibers.assign(t.base_cells, std::vector<Index>{0});
  return r;
}

inline Rational l2_sq_diff(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s / Rational(static_cast<long>(a.size()));
}

// ‖E(T^n f·g|X) − E(T0^n f·g|X)‖² straight from the definition.
inline Rational rigidity_defect_sq(const skew::SkewProduct& t, const skew::StepFunctionZ& f,
                                   const skew::StepFunctionZ& g, long n, Index side) {
  const RawSkew r = raw(t);
  return l2_sq_diff(correlation(r, f, g, n, side), correlation(lifted_base(r), f, g, n, side));
}

}  // namespace oracle
