#include <doctest.h>

#include "skewlab/constructions.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/interval_map.hpp"
#include "support.hpp"

using namespace skew;
using fixtures::q;

TEST_CASE("rotation and translations") {
  auto rot = IntervalMap::rotation(q(1, 3));
  CHECK(rot.piece_count() == 2);
  CHECK(rot.apply(q(0)) == q(1, 3));
  CHECK(rot.apply(q(5, 6)) == q(1, 6));
  CHECK(IntervalMap::rotation(q(4, 3)) == rot);
  CHECK(IntervalMap::rotation(q(-2, 3)) == rot);
  CHECK(IntervalMap::rotation(q(1)).is_identity());
  CHECK(compose(rot, rot.inverse()).is_identity());
  CHECK(compose(rot, compose(rot, rot)).is_identity());
}

TEST_CASE("interval exchange construction") {
  std::vector<Rational> lengths{q(1, 5), q(1, 2), q(3, 10)};
  std::vector<std::size_t> order{2, 0, 1};
  auto iet = IntervalMap::exchange(lengths, order);
  CHECK(iet.apply(q(0)) == q(3, 10));
  CHECK(iet.apply(q(1, 5)) == q(1, 2));
  CHECK(iet.apply(q(7, 10)) == q(0));
  CHECK(iet.image(q(0), q(1)).measure() == q(1));
  CHECK(compose(iet.inverse(), iet).is_identity());
}

TEST_CASE("invalid interval maps are rejected") {
  using P = IntervalMap::Piece;
  CHECK_THROWS_AS(IntervalMap({P{q(0), q(1, 2), q(0)}}), DomainError);
  CHECK_THROWS_AS(IntervalMap({P{q(0), q(1, 2), q(0)}, P{q(1, 2), q(1), q(-1, 4)}}), DomainError);
}

TEST_CASE("conversion to p-adic permutations") {
  auto quarter = IntervalMap::rotation(q(1, 4)).to_padic(2);
  REQUIRE(quarter);
  CHECK(quarter->rank() == 2);
  CHECK(*quarter == PAdicPermutation::rotation(2, 2, 1));
  CHECK_FALSE(IntervalMap::rotation(q(1, 3)).to_padic(2));
  auto third = IntervalMap::rotation(q(1, 3)).to_padic(3);
  REQUIRE(third);
  CHECK(*third == PAdicPermutation(3, 1, {1, 2, 0}));
  auto odo = odometer(2, 3);
  CHECK(*IntervalMap::from_padic(odo).to_padic(2) == odo);
}

TEST_CASE("weak distance between a rotation and its dyadic snap") {
  // Offset |1/3 - 3/8| = 1/24 per rank-3 interval: symmetric difference 2/24.
  auto rot = IntervalMap::rotation(q(1, 3));
  auto dyadic = IntervalMap::rotation(q(3, 8));
  CHECK(weak_distance(rot, dyadic, 2, 3) == q(1, 12));
  CHECK(weak_distance(rot, rot, 2, 3) == q(0));
}

TEST_CASE("interval unions") {
  IntervalUnion a({{q(0), q(1, 2)}, {q(1, 2), q(3, 4)}});
  CHECK(a.spans().size() == 1);
  CHECK(a.measure() == q(3, 4));
  IntervalUnion b({{q(1, 4), q(1)}});
  CHECK(symdiff_measure(a, b) == q(1, 2));
  CHECK(symdiff_measure(a, a) == q(0));
  CHECK(symdiff_measure(a, IntervalUnion{}) == q(3, 4));
}

TEST_CASE("p-adic and interval-map weak distances agree") {
  Rng rng(99);
  for (int i = 0; i < 60; ++i) {
    auto a = sample_permutation(2, 3, rng);
    auto b = sample_permutation(2, 2, rng);
    for (int k = 0; k <= 3; ++k) {
      CHECK(weak_distance(a, b, k) ==
            weak_distance(IntervalMap::from_padic(a), IntervalMap::from_padic(b), 2, k));
    }
    // compose agrees with permutation composition
    CHECK(*compose(IntervalMap::from_padic(a), IntervalMap::from_padic(b)).to_padic(2) == compose(a, b));
  }
}
