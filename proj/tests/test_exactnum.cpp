#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "su2chan/exactnum.hpp"

using namespace su2chan;

TEST_CASE("rational serialization") {
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK(parse_rational("-2/3") == Rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational(to_string(Rational(123456789, 1000))) == Rational(123456789, 1000));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("complex rationals") {
  const CRational i(0, 1);
  CHECK(i * i == CRational(-1));
  CHECK(pow(CRational(1, 1), 4) == CRational(-4));
  CHECK(CRational(3, 4) / CRational(3, 4) == CRational(1));
  CHECK(norm_sq(CRational(Rational(3, 5), Rational(4, 5))) == 1);
  CHECK_THROWS_AS(CRational(1) / CRational(0), Error);
}

TEST_CASE("binomials and Pochhammer symbols") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK_THROWS_AS(binomial(-1, 0), Error);
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(rising_pochhammer(3, 0) == 1);
  CHECK(rising_pochhammer(-3, 4) == 0);
  CHECK(rising_pochhammer(Rational(1, 2), 2) == Rational(3, 4));
  CHECK(falling_pochhammer(5, 2) == 20);
  CHECK(falling_pochhammer(2, 3) == 0);
  for (int n = 0; n <= 30; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(binomial(n, k) == falling_pochhammer(n, k) / Rational(factorial(k)));
}

TEST_CASE("2F1 at one against the Gauss product") {
  CHECK(hyp2f1_terminating(0, 7, 3) == 1);
  CHECK(hyp2f1_terminating(1, 2, 3) == Rational(1, 3));
  for (int n = 0; n <= 12; ++n)
    for (int b = -12; b <= 12; ++b)
      for (int c = -20; c <= 20; ++c) {
        if (std::abs(c) < n) continue;
        if (c <= 0 && c > -n) continue;
        REQUIRE(hyp2f1_terminating(n, b, c) == oracle::gauss_2f1(n, b, c));
      }
}

TEST_CASE("hypergeometric errors") {
  CHECK_THROWS_AS(hyp3f2_terminating(Rational(1, 2), 1, 1, 2, 2), Error);
  try {
    hyp2f1_terminating(3, 1, -1);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DivisionByZero);
  }
  // a vanishing numerator ends the sum before the zero denominator is reached
  CHECK(hyp2f1_terminating(2, 1, -2) == oracle::gauss_2f1(2, 1, -2));
  CHECK(hyp3f2_terminating(0, 5, 7, -1, -1) == 1);
}

TEST_CASE("3F2 reduces to 2F1 when a parameter cancels") {
  for (int n = 0; n <= 8; ++n)
    for (int b = -5; b <= 5; ++b)
      for (int c = n; c <= 12; ++c) {
        if (c == 0) continue;
        CHECK(hyp3f2_terminating(-n, b, 7, c, 7) == hyp2f1_terminating(n, b, c));
      }
}
