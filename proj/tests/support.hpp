#pragma once

#include <cstdint>
#include <vector>

#include "skewlab/constructions.hpp"
#include "skewlab/skew_product.hpp"
#include "skewlab/step_function.hpp"

namespace fixtures {

using skew::Index;
using skew::PAdicPermutation;
using skew::PAdicSet;
using skew::Rational;
using skew::SkewProduct;
using skew::StepFunctionZ;

inline Rational q(long n, long d = 1) { return Rational(n, d); }

inline PAdicPermutation swap2() { return PAdicPermutation(2, 1, {1, 0}); }
inline PAdicPermutation id2(int rank = 0) { return PAdicPermutation::identity(2, rank); }

// Swap base with fibers (swap_Y on [0,1/2), id_Y on [1/2,1)).
inline SkewProduct swap_example() {
  return SkewProduct(swap2(), {0, 1}, {swap2(), id2(1)});
}

// χ_{X × [0,1/2)} at p = 2.
inline StepFunctionZ chi_a() { return StepFunctionZ::half_fiber(2); }

inline SkewProduct random_skew(skew::Rng& rng, int max_base_rank, int max_fiber_rank, int p = 2) {
  const int br = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_base_rank) + 1));
  const int fr = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_fiber_rank) + 1));
  const PAdicPermutation base = skew::sample_permutation(p, br, rng);
  skew::SampleOptions opts;
  opts.fiber_rank = fr;
  opts.labels = 1 + static_cast<std::size_t>(rng.below(3));
  return skew::sample_skew(base, opts, rng.next());
}

inline SkewProduct random_fiberwise(skew::Rng& rng, int max_rank, int p = 2) {
  const int br = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank) + 1));
  skew::SampleOptions opts;
  opts.fiber_rank = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_rank) + 1));
  opts.labels = 1 + static_cast<std::size_t>(rng.below(3));
  return skew::sample_skew(PAdicPermutation::identity(p, br), opts, rng.next());
}

// Integer-valued step function with entries in [-range, range].
inline StepFunctionZ random_step(skew::Rng& rng, int rank, long range = 3, int p = 2) {
  const Index n = skew::cells(p, rank);
  std::vector<Rational> v(n * n);
  for (auto& x : v) {
    const long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * range + 1))) - range;
    const long den = 1 + static_cast<long>(rng.below(4));
    x = Rational(num, den);
  }
  return StepFunctionZ(p, rank, std::move(v));
}

// Random A with E(χ_A|X) ≡ 1/2: each base row gets a random half of the fiber cells.
inline StepFunctionZ random_half_fiber(skew::Rng& rng, int rank) {
  const Index n = skew::cells(2, rank);
  std::vector<Rational> v(n * n);
  for (Index i = 0; i < n; ++i) {
    auto perm = skew::sample_permutation(2, rank, rng);
    for (Index j = 0; j < n / 2; ++j) v[i * n + perm[j]] = 1;
  }
  return StepFunctionZ(2, rank, std::move(v));
}

}  // namespace fixtures
