#include <doctest.h>

#include "skewlab/constructions.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/rational.hpp"

using skew::Rational;

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-3, -6).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational(1, 0), skew::DomainError);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("-2/4").str() == "-1/2");
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("+3/9") == Rational(1, 3));
  CHECK_THROWS_AS(Rational::parse("1/0"), skew::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), skew::ParseError);
  CHECK_THROWS_AS(Rational::parse("a/b"), skew::ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), skew::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), skew::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/"), skew::ParseError);
}

TEST_CASE("decimal rendering rounds half to even") {
  CHECK(Rational(1, 16).decimal() == "0.0625");
  CHECK(Rational(1, 3).decimal() == "0.33333333333333333333");
  CHECK(Rational(2, 3).decimal() == "0.66666666666666666667");
  CHECK(Rational(-5, 2).decimal() == "-2.5");
  CHECK(Rational(0).decimal() == "0");
  CHECK(Rational(123).decimal() == "123");
  // 0.125 at two significant digits is a tie: 0.12 (even), 0.375 -> 0.38.
  CHECK(Rational(1, 8).decimal(2) == "0.12");
  CHECK(Rational(3, 8).decimal(2) == "0.38");
  CHECK(Rational(999, 1000).decimal(2) == "1");
  CHECK(Rational(12345).decimal(3) == "12300");
}

TEST_CASE("field laws hold on random rationals") {
  skew::Rng rng(7);
  auto draw = [&] {
    long n = static_cast<long>(rng.below(2001)) - 1000;
    long d = 1 + static_cast<long>(rng.below(500));
    return Rational(n, d);
  };
  for (int i = 0; i < 300; ++i) {
    Rational a = draw(), b = draw(), c = draw();
    CHECK(a + b - b == a);
    CHECK((a + b) * c == a * c + b * c);
    if (!b.is_zero()) CHECK(a / b * b == a);
    CHECK(Rational::parse(a.str()) == a);
    CHECK(a.denominator() > 0);
    CHECK(gcd(a.numerator(), a.denominator()) == 1);
  }
}
