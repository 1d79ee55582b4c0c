#include <doctest.h>

#include "skewlab/constructions.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/padic.hpp"
#include "skewlab/skew_product.hpp"
#include "support.hpp"

using namespace skew;
using fixtures::q;

TEST_CASE("refine_to_rank") {
  SUBCASE("interval to rank 2") {
    auto s = PAdicSet::from_interval(PAdicInterval(2, 1, 0)).refine(2);
    CHECK(s == PAdicSet(2, 2, {0, 1}));
    CHECK(s.rank() == 2);
  }
  SUBCASE("identity stays identity") {
    auto id = PAdicPermutation::identity(2, 1).refine(3);
    CHECK(id.rank() == 3);
    CHECK(id.is_identity());
  }
  SUBCASE("swap to rank 2") {
    auto sw = PAdicPermutation(2, 1, {1, 0}).refine(2);
    CHECK(std::vector<Index>(sw.mapping().begin(), sw.mapping().end()) == std::vector<Index>{2, 3, 0, 1});
    // point map x -> x ± 1/2 on every child
    for (Index j = 0; j < 4; ++j) {
      Rational mid(2 * static_cast<long>(j) + 1, 8);
      Rational expected = j < 2 ? mid + q(1, 2) : mid - q(1, 2);
      CHECK(sw.apply(mid) == expected);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(PAdicSet(2, 2, {0}).refine(1), RankError);
    CHECK_THROWS_AS(PAdicPermutation::identity(2, 2).refine(1), RankError);
    CHECK_THROWS_AS(PAdicSet(2, 1, {0}) | PAdicSet(3, 1, {0}), BaseMismatchError);
    CHECK_THROWS_AS(compose(PAdicPermutation::identity(2, 1), PAdicPermutation::identity(3, 1)),
                    BaseMismatchError);
  }
}

TEST_CASE("measure") {
  CHECK(PAdicSet(2, 2, {0, 1}).measure() == q(1, 2));
  CHECK(PAdicSet(3, 1, {}).measure() == q(0));
  CHECK(PAdicSet(2, 3, {0, 2, 4, 6}).measure() == q(1, 2));
}

TEST_CASE("symdiff_measure") {
  PAdicSet a(2, 2, {0, 1});
  CHECK(symdiff_measure(a, a) == q(0));
  CHECK(symdiff_measure(PAdicSet(2, 1, {0}), PAdicSet(2, 1, {1})) == q(1));
  CHECK(symdiff_measure(PAdicSet(2, 2, {0, 1}), PAdicSet(2, 2, {1, 2})) == q(1, 2));
  CHECK(symdiff_measure(PAdicSet(2, 1, {0}), PAdicSet(2, 3, {0, 1, 2, 3})) == q(0));
  CHECK_THROWS_AS(symdiff_measure(PAdicSet(2, 1, {0}), PAdicSet(3, 1, {0})), BaseMismatchError);
}

TEST_CASE("set and permutation validation") {
  CHECK_THROWS_AS(PAdicSet(2, 1, {1, 0}), DomainError);
  CHECK_THROWS_AS(PAdicSet(2, 1, {0, 0}), DomainError);
  CHECK_THROWS_AS(PAdicSet(2, 1, {2}), DomainError);
  CHECK_THROWS_AS(PAdicPermutation(2, 1, {0, 0}), DomainError);
  CHECK_THROWS_AS(PAdicPermutation(2, 2, {0, 1}), DomainError);
  CHECK_THROWS_AS(PAdicPermutation(1, 1, {0}), DomainError);
  CHECK_THROWS_AS(PAdicPermutation::identity(2, 13), CapError);
}

TEST_CASE("rank cap is configurable") {
  CHECK(Limits::max_rank(2) == 12);
  CHECK(Limits::max_rank(3) == 7);   // 3^7 = 2187 <= 4096 < 3^8
  CHECK(Limits::max_rank(4) == 6);
  Limits::set_binary_cap(5);
  CHECK(Limits::max_rank(2) == 5);
  CHECK_THROWS_AS(PAdicPermutation::identity(2, 6), CapError);
  Limits::reset();
  CHECK(Limits::max_rank(2) == 12);
}

TEST_CASE("weak_distance on X") {
  auto odo = odometer(2, 2);
  CHECK(weak_distance(odo, odo, 2) == q(0));
  CHECK(weak_distance(odo, PAdicPermutation::identity(2, 0), 1) == q(1));
}

TEST_CASE("point application rejects boundaries") {
  auto sw = PAdicPermutation(2, 1, {1, 0});
  CHECK(sw.apply(q(1, 3)) == q(5, 6));
  CHECK_THROWS_AS(sw.apply(q(1, 2)), BoundaryError);
  CHECK_THROWS_AS(sw.apply(q(0)), BoundaryError);
  CHECK_THROWS_AS(sw.apply(q(1)), DomainError);
}

TEST_CASE("permutation power and order") {
  auto odo = odometer(3, 2);
  CHECK(odo.order() == 9);
  CHECK(odo.power(9).is_identity());
  CHECK(odo.power(-1) == odo.inverse());
  CHECK(compose(odo.power(4), odo.power(-7)) == odo.power(-3));
}

TEST_CASE("p-adic invariants on random data") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + static_cast<int>(rng.below(2));
    const int rank = static_cast<int>(rng.below(4));
    auto perm = sample_permutation(p, rank, rng);
    const int srank = static_cast<int>(rng.below(4));
    std::vector<Index> idx;
    for (Index j = 0; j < cells(p, srank); ++j) {
      if (rng.below(2)) idx.push_back(j);
    }
    PAdicSet s(p, srank, idx);
    // measure preservation
    CHECK(perm.image(s).measure() == s.measure());
    // refinement is a homomorphism for images
    const int up = std::max(rank, srank) + 1;
    CHECK(perm.refine(up).image(s.refine(up)) == perm.image(s));

    std::vector<Index> idx2;
    for (Index j = 0; j < cells(p, srank); ++j) {
      if (rng.below(2)) idx2.push_back(j);
    }
    PAdicSet t(p, srank, idx2);
    CHECK(symdiff_measure(s, t) == s.measure() + t.measure() - q(2) * (s & t).measure());

    // pseudometric at a fixed rank
    auto a = sample_permutation(p, rank, rng);
    auto b = sample_permutation(p, rank, rng);
    auto c = sample_permutation(p, rank, rng);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(rank) + 1));
    CHECK(weak_distance(a, a, k) == q(0));
    CHECK(weak_distance(a, b, k) == weak_distance(b, a, k));
    CHECK(weak_distance(a, c, k) <= weak_distance(a, b, k) + weak_distance(b, c, k));
  }
}
