#pragma once

// Exact scalars and the combinatorial helpers built on them.
//
// Rational is GMP's mpq behind Boost.Multiprecision; every value is kept in
// lowest terms with a positive denominator, so == is structural equality.

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <string>
#include <string_view>

#include "su2chan/error.hpp"

namespace su2chan {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);

/// "p/q" with the denominator always present, e.g. "5/1", "-2/3".
std::string to_string(const Rational& q);
/// Accepts "p/q" or a bare integer "p".
Rational parse_rational(std::string_view text);
double to_double(const Rational& q);

/// Complex number with exact rational parts.
struct CRational {
  Rational re;
  Rational im;

  CRational() = default;
  CRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  CRational(long r) : re(r) {}                 // NOLINT(google-explicit-constructor)
  CRational(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRational& operator*=(const CRational& o);
  CRational& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }
  CRational& operator/=(const CRational& o);

  friend bool operator==(const CRational&, const CRational&) = default;
};

inline CRational operator+(CRational a, const CRational& b) { return a += b; }
inline CRational operator-(CRational a, const CRational& b) { return a -= b; }
inline CRational operator*(CRational a, const CRational& b) { return a *= b; }
inline CRational operator*(CRational a, const Rational& s) { return a *= s; }
inline CRational operator*(const Rational& s, CRational a) { return a *= s; }
inline CRational operator/(CRational a, const CRational& b) { return a /= b; }
inline CRational operator-(const CRational& a) { return {-a.re, -a.im}; }

inline CRational conj(const CRational& z) { return {z.re, -z.im}; }
/// |z|^2, exact.
inline Rational norm_sq(const CRational& z) { return z.re * z.re + z.im * z.im; }
std::complex<double> to_complex(const CRational& z);
CRational pow(const CRational& z, int n);

// --- combinatorics -------------------------------------------------------

Integer factorial(int n);
/// C(n, k); zero outside 0 <= k <= n.
Rational binomial(int n, int k);
/// (a)_n = a (a+1) ... (a+n-1)
Rational rising_pochhammer(const Rational& a, int n);
/// (a)^n_- = a (a-1) ... (a-n+1)
Rational falling_pochhammer(const Rational& a, int n);

// --- terminating hypergeometric series at unit argument ------------------

/// 2F1(-n, b; c; 1) summed term by term.
Rational hyp2f1_terminating(int n, const Rational& b, const Rational& c);

/// 3F2(a1, a2, a3; b1, b2; 1). At least one a_j must be a nonpositive integer.
Rational hyp3f2_terminating(const Rational& a1, const Rational& a2, const Rational& a3,
                            const Rational& b1, const Rational& b2);

}  // namespace su2chan
