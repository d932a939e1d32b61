#include "su2chan/exactnum.hpp"

#include <gmp.h>

#include <array>
#include <cmath>
#include <optional>

namespace su2chan {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NonTerminating: return "NonTerminating";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::NotUnitaryInput: return "NotUnitaryInput";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::BandLimitExceeded: return "BandLimitExceeded";
    case Errc::SingularComponent: return "SingularComponent";
    case Errc::NonFiniteSample: return "NonFiniteSample";
    case Errc::SpectrumOutOfRange: return "SpectrumOutOfRange";
  }
  return "Unknown";
}

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
    Integer p(std::string(text.substr(0, slash)));
    Integer q(std::string(text.substr(slash + 1)));
    if (q == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e) != nullptr) throw;
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
}

double to_double(const Rational& q) { return mpq_get_d(q.backend().data()); }

CRational& CRational::operator*=(const CRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRational& CRational::operator/=(const CRational& o) {
  Rational d = norm_sq(o);
  if (d == 0) throw Error(Errc::DivisionByZero, "complex division by zero");
  *this *= conj(o);
  re /= d;
  im /= d;
  return *this;
}

std::complex<double> to_complex(const CRational& z) { return {to_double(z.re), to_double(z.im)}; }

CRational pow(const CRational& z, int n) {
  CRational result(1);
  CRational base = z;
  for (; n > 0; n >>= 1) {
    if (n & 1) result *= base;
    base *= base;
  }
  return result;
}

Integer factorial(int n) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "factorial of negative number");
  Integer r;
  mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(n));
  return r;
}

Rational binomial(int n, int k) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "binomial with negative n");
  if (k < 0 || k > n) return Rational(0);
  Integer r;
  mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Rational rising_pochhammer(const Rational& a, int n) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "Pochhammer length must be nonnegative");
  Rational r(1);
  for (int i = 0; i < n; ++i) r *= a + i;
  return r;
}

Rational falling_pochhammer(const Rational& a, int n) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "Pochhammer length must be nonnegative");
  Rational r(1);
  for (int i = 0; i < n; ++i) r *= a - i;
  return r;
}

namespace {

bool is_nonpositive_integer(const Rational& q) { return denominator(q) == 1 && q <= 0; }

// Sums sum_i prod(num_j)_i / (prod(den_j)_i i!) until a numerator factor
// vanishes. A zero denominator factor reached before that is an error.
template <std::size_t P, std::size_t Q>
Rational sum_terminating(const std::array<Rational, P>& num, const std::array<Rational, Q>& den) {
  std::optional<Integer> terms;
  for (const auto& a : num) {
    if (!is_nonpositive_integer(a)) continue;
    Integer len = -numerator(a);
    if (!terms || len < *terms) terms = len;
  }
  if (!terms) throw Error(Errc::NonTerminating, "no numerator parameter is a nonpositive integer");

  Rational sum(1);
  Rational term(1);
  const long last = terms->convert_to<long>();
  for (long i = 0; i < last; ++i) {
    Rational up(1);
    for (const auto& a : num) up *= a + i;
    if (up == 0) break;
    Rational down(i + 1);
    for (const auto& b : den) down *= b + i;
    if (down == 0) {
      throw Error(Errc::DivisionByZero,
                  "denominator Pochhammer vanishes at term " + std::to_string(i + 1));
    }
    term *= up / down;
    sum += term;
  }
  return sum;
}

}  // namespace

Rational hyp2f1_terminating(int n, const Rational& b, const Rational& c) {
  if (n < 0) throw Error(Errc::IndexOutOfRange, "2F1 termination index must be nonnegative");
  return sum_terminating<2, 1>({Rational(-n), b}, {c});
}

Rational hyp3f2_terminating(const Rational& a1, const Rational& a2, const Rational& a3,
                            const Rational& b1, const Rational& b2) {
  return sum_terminating<3, 2>({a1, a2, a3}, {b1, b2});
}

}  // namespace su2chan
