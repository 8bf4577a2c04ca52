#include <doctest.h>

#include "sierp/rational.hpp"
#include "sierp/rng.hpp"

using namespace sierp;

TEST_CASE("rational canonical form") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(6, 4).num() == 3);
  CHECK(Rational(6, 4).den() == 2);
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(1, -2).den() == 2);
  CHECK(Rational(0, 7).to_string() == "0/1");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
}

TEST_CASE("rational field axioms on random values") {
  SplitMix64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const Rational a = rng.rational(50, 20);
    const Rational b = rng.rational(50, 20);
    const Rational c = rng.rational(50, 20);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("integer powers") {
  CHECK(Rational::pow2(3) == Rational(8));
  CHECK(Rational::pow2(-2) == Rational(1, 4));
  CHECK(Rational::pow3(-3) == Rational(1, 27));
  CHECK(Rational::pow(Rational(5, 3), 2) == Rational(25, 9));
  CHECK(Rational::pow(Rational(5, 3), -1) == Rational(3, 5));
  CHECK(Rational::pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK_THROWS_AS(Rational::pow(Rational(0), -1), std::domain_error);
}

TEST_CASE("parse and serialize round-trip") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("17") == Rational(17));
  CHECK(Rational::parse("6/4").to_string() == "3/2");
  CHECK_THROWS_AS(Rational::parse("x/y"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);

  SplitMix64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Rational a = rng.rational(1000, 999);
    CHECK(Rational::parse(a.to_string()) == a);
  }
}

TEST_CASE("decimal rendering is truncated and deterministic") {
  CHECK(Rational(1, 4).to_decimal(3) == "0.250");
  CHECK(Rational(-1, 3).to_decimal(4) == "-0.3333");
  CHECK(Rational(7).to_decimal(0) == "7");
  CHECK(Rational(2, 3).to_decimal(2) == "0.66");
}
