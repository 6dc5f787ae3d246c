#include <doctest.h>

#include "tropbn/rational.hpp"

using namespace tropbn;

TEST_CASE("rational string round trip") {
  CHECK(rational_to_string(Rational(3, 4)) == "3/4");
  CHECK(rational_to_string(Rational(-3, 4)) == "-3/4");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK(rational_to_string(Rational(0)) == "0");
  CHECK(rational_from_string("3/4") == Rational(3, 4));
  CHECK(rational_from_string("-6/8") == Rational(-3, 4));
  CHECK(rational_from_string("7") == Rational(7));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("rational json uses reduced p/q strings") {
  CHECK(rational_to_json(Rational(1, 2)) == json("1/2"));
  CHECK(rational_to_json(Rational(4)) == json("4"));
  CHECK(rational_from_json(json("9/3")) == Rational(3));
}

TEST_CASE("rational powers") {
  CHECK(rational_pow(Rational(1, 2), 3) == Rational(1, 8));
  CHECK(rational_pow(Rational(2), -2) == Rational(1, 4));
  CHECK(rational_pow(Rational(5), 0) == Rational(1));
  CHECK_THROWS_AS(rational_pow(Rational(0), -1), std::invalid_argument);
}

TEST_CASE("rational mod reduces into [0, p)") {
  CHECK(rational_mod(Rational(7, 2), Rational(3)) == Rational(1, 2));
  CHECK(rational_mod(Rational(-1, 4), Rational(3, 2)) == Rational(5, 4));
  CHECK(rational_mod(Rational(3), Rational(3)) == Rational(0));
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(23, 21) == 253);
  CHECK(binomial(19, 8) == 75582);
  CHECK(binomial(4, 7) == 0);
}
