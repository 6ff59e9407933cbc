#include <doctest.h>

#include <limits>
#include <stdexcept>

#include "mtsp/rational.hpp"
#include "test_support.hpp"

using mtsp::Rational;

TEST_CASE("rationals normalize sign and common factors") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(6, -4).den() == 2);
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("decimal literals parse exactly") {
  CHECK(Rational::parse("1.2") == Rational(6, 5));
  CHECK(Rational::parse("1.25") == Rational(5, 4));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("7/3") == Rational(7, 3));
  CHECK(Rational::parse(" 63.95 ") == Rational(1279, 20));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e5"), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
  const Rational a = Rational::parse("1.2");
  const Rational b = Rational::parse("1.25");
  CHECK(a * 7 == Rational::parse("8.4"));
  CHECK(a + b == Rational::parse("2.45"));
  CHECK(a - b == Rational(-1, 20));
  CHECK(a / b == Rational(24, 25));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("ordering compares values, not representations") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(5) > Rational(49, 10));
}

TEST_CASE("decimal rendering") {
  CHECK(Rational(1279, 20).to_decimal() == "63.95");
  CHECK(Rational(114, 5).to_decimal() == "22.8");
  CHECK(Rational(46).to_decimal() == "46");
  CHECK(Rational(-879, 20).to_decimal() == "-43.95");
  CHECK(Rational(1, 3).to_decimal() == "~0.3333333333");
  CHECK(Rational(2, 3).to_decimal(4) == "~0.6667");
  CHECK(Rational(-1, 8).to_decimal() == "-0.125");
  CHECK(Rational(7, 3).to_string() == "7/3");
}

TEST_CASE("overflow is reported, not wrapped") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + Rational(1), std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
  CHECK_NOTHROW(big * Rational(1, 2));
}

TEST_CASE("field laws hold on random values") {
  mtsp::testing::Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = mtsp::testing::random_rational(rng, 50) - Rational(25);
    const Rational b = mtsp::testing::random_rational(rng, 50) - Rational(25);
    const Rational c = mtsp::testing::random_rational(rng, 50) + Rational(1);
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a / c) * c == a);
    CHECK(Rational::parse(a.to_string()) == a);
  }
}
