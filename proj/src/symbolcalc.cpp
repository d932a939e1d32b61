#include "su2chan/symbolcalc.hpp"

#include <algorithm>
#include <cmath>

namespace su2chan {

SymbolEvaluator::SymbolEvaluator(const KernelOperator& a) : level_(a.level()) {
  const int n = a.dim();
  coeffs_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) coeffs_[i * n + j] = to_complex(a(i, j));
}

std::complex<double> SymbolEvaluator::operator()(std::complex<double> z) const {
  const int n = level_ + 1;
  const double s = std::sqrt(1.0 + std::norm(z));
  const std::complex<double> w = z / s;
  const double c = 1.0 / s;
  // u_i = w^i c^(level - i)
  std::vector<std::complex<double>> u(n);
  std::vector<double> cpow(n);
  cpow[0] = 1.0;
  for (int i = 1; i < n; ++i) cpow[i] = cpow[i - 1] * c;
  std::complex<double> wp = 1.0;
  for (int i = 0; i < n; ++i) {
    u[i] = wp * cpow[level_ - i];
    wp *= w;
  }
  std::complex<double> acc = 0;
  for (int i = 0; i < n; ++i) {
    std::complex<double> row = 0;
    for (int j = 0; j < n; ++j) row += coeffs_[i * n + j] * std::conj(u[j]);
    acc += u[i] * row;
  }
  return acc;
}

IsotypicFunction::IsotypicFunction(int level, std::vector<KernelOperator> components)
    : level_(level), components_(std::move(components)) {
  if (level_ < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  if (components_.size() != static_cast<std::size_t>(level_ + 1)) {
    throw Error(Errc::LengthMismatch, "need one component per m = 0..level");
  }
  for (const auto& c : components_)
    if (c.level() != level_) throw Error(Errc::LevelMismatch, "component level differs from function level");
}

KernelOperator IsotypicFunction::total() const {
  KernelOperator t(level_);
  for (const auto& c : components_) t += c;
  return t;
}

std::complex<double> IsotypicFunction::operator()(std::complex<double> z) const {
  return evaluate_symbol(total(), z);
}

int IsotypicFunction::band() const {
  for (int m = level_; m >= 0; --m)
    if (!components_[m].is_zero()) return m;
  return -1;
}

IsotypicFunction IsotypicFunction::lifted(int level) const {
  if (level < level_) throw Error(Errc::BandLimitExceeded, "cannot lower the level of a function");
  std::vector<KernelOperator> out;
  out.reserve(level + 1);
  for (const auto& c : components_) out.push_back(raise_level(c, level));
  while (static_cast<int>(out.size()) <= level) out.emplace_back(level);
  return {level, std::move(out)};
}

IsotypicFunction& IsotypicFunction::operator+=(const IsotypicFunction& o) {
  if (o.level_ > level_) *this = lifted(o.level_);
  const IsotypicFunction rhs = o.level_ < level_ ? o.lifted(level_) : o;
  for (int m = 0; m <= level_; ++m) components_[m] += rhs.components_[m];
  return *this;
}

IsotypicFunction& IsotypicFunction::operator*=(const Rational& s) {
  for (auto& c : components_) c *= CRational(s);
  return *this;
}

bool operator==(const IsotypicFunction& a, const IsotypicFunction& b) {
  const int level = std::max(a.level_, b.level_);
  const IsotypicFunction la = a.level_ == level ? a : a.lifted(level);
  const IsotypicFunction lb = b.level_ == level ? b : b.lifted(level);
  return la.components_ == lb.components_;
}

std::complex<double> evaluate_symbol(const KernelOperator& a, std::complex<double> z) {
  return SymbolEvaluator(a)(z);
}

IsotypicFunction symbol(const KernelOperator& a) {
  return {a.level(), isotypic_projectors(a.level()).decompose(a)};
}

// Coefficient of x^s conj(y)^t in R_nu^*(f) is
//   C(nu,s) C(nu,t) sum_{t+i = s+j} a_ij p!(L-p)!/(L+1)!,  p = t+i, L = level+nu,
// from the moments of |z|^(2p) / (1+|z|^2)^L against d iota.
KernelOperator toeplitz(const IsotypicFunction& f, int nu) {
  if (nu < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  if (f.band() > nu) {
    throw Error(Errc::BandLimitExceeded, "function has harmonics above level " + std::to_string(nu));
  }
  const KernelOperator a = f.total();
  const int mu = a.level();
  const int big = mu + nu;
  std::vector<Rational> moment(big + 1);
  for (int p = 0; p <= big; ++p) moment[p] = Rational(1) / (binomial(big, p) * (big + 1));

  CMatrix out(nu + 1, nu + 1);
  for (int s = 0; s <= nu; ++s)
    for (int t = 0; t <= nu; ++t) {
      CRational acc;
      // j - i = t - s
      const int d = t - s;
      for (int i = std::max(0, -d); i <= mu && i + d <= mu; ++i) {
        const CRational& v = a(i, i + d);
        if (v.is_zero()) continue;
        acc += v * moment[t + i];
      }
      if (acc.is_zero()) continue;
      out(s, t) = acc * (binomial(nu, s) * binomial(nu, t));
    }
  return {nu, std::move(out)};
}

Rational berezin_eigenvalue(int nu, int m) {
  if (nu < 0 || m < 0) throw Error(Errc::IndexOutOfRange, "berezin_eigenvalue needs nu, m >= 0");
  if (m > nu) return 0;
  const Rational nf(factorial(nu));
  return nf * nf / (Rational(factorial(nu + m + 1)) * Rational(factorial(nu - m)));
}

BerezinSpectrum berezin_spectrum(int nu) {
  BerezinSpectrum s{nu, {}};
  for (int m = 0; m <= nu; ++m) s.eigenvalues.push_back(berezin_eigenvalue(nu, m));
  return s;
}

IsotypicFunction berezin_apply(int nu, const IsotypicFunction& f) {
  if (f.band() > nu) {
    throw Error(Errc::BandLimitExceeded, "function has harmonics above level " + std::to_string(nu));
  }
  return f.map_components([nu](int m) { return berezin_eigenvalue(nu, m); });
}

IsotypicFunction inverse_berezin(int nu, const IsotypicFunction& f) {
  if (f.band() > nu) {
    throw Error(Errc::SingularComponent,
                "component m=" + std::to_string(f.band()) + " is annihilated by B_" + std::to_string(nu));
  }
  return f.map_components([nu](int m) {
    return m > nu ? Rational(0) : Rational(1) / berezin_eigenvalue(nu, m);
  });
}

Rational e_nu_coefficient(const ChannelSpec& spec, int l) {
  validate(spec);
  const auto [mu, nu, k] = spec;
  if (l < 0 || l > k) throw Error(Errc::IndexOutOfRange, "need 0 <= l <= k");
  Rational c = c_squared(spec) * binomial(nu - k, k - l) * Rational(factorial(nu - k + l)) *
               Rational(factorial(k)) / (Rational(factorial(nu)) * Rational(factorial(l)));
  return (k - l) % 2 == 0 ? c : Rational(-c);
}

IsotypicFunction e_nu_apply(const ChannelSpec& spec, const IsotypicFunction& f) {
  validate(spec);
  if (f.level() > spec.mu) throw Error(Errc::BandLimitExceeded, "input level exceeds mu");
  std::vector<Rational> coef;
  for (int l = 0; l <= spec.k; ++l) coef.push_back(e_nu_coefficient(spec, l));
  return f.map_components([&](int m) {
    Rational e;
    for (int l = 0; l <= spec.k; ++l) e += coef[l] * berezin_eigenvalue(spec.mu - l, m);
    return e;
  });
}

IsotypicFunction e_limit_apply(int mu, int k, const IsotypicFunction& f) {
  if (k < 0 || k > mu) throw Error(Errc::InvalidSpec, "need 0 <= k <= mu");
  if (f.level() > mu) throw Error(Errc::BandLimitExceeded, "input level exceeds mu");
  return f.map_components([mu, k](int m) {
    Rational e;
    for (int l = 0; l <= k; ++l) {
      const Rational t = binomial(k, l) * berezin_eigenvalue(mu - l, m);
      if ((k - l) % 2 == 0) e += t; else e -= t;
    }
    return binomial(mu, k) * e;
  });
}

Rational e_eigenvalue_3f2(int mu, int k, int m) {
  if (k < 0 || k > mu) throw Error(Errc::InvalidSpec, "need 0 <= k <= mu");
  if (m < 0) throw Error(Errc::IndexOutOfRange, "m must be nonnegative");
  if (m > mu) return 0;
  const Rational muf(factorial(mu));
  const Rational f = hyp3f2_terminating(-k, -m - mu - 1, m - mu, -mu, -mu);
  Rational v = binomial(mu, k) * muf * muf * f /
               (Rational(factorial(mu - m)) * Rational(factorial(mu + m + 1)));
  return k % 2 == 0 ? v : Rational(-v);
}

Rational e_eigenvalue_sum(int mu, int k, int m) {
  if (k < 0 || k > mu) throw Error(Errc::InvalidSpec, "need 0 <= k <= mu");
  if (m < 0) throw Error(Errc::IndexOutOfRange, "m must be nonnegative");
  if (m > mu) return 0;
  Rational acc;
  for (int l = 0; l <= mu - m; ++l) {
    const Rational g(factorial(mu - l));
    const Rational t = binomial(k, l) * g * g /
                       (Rational(factorial(mu - l + m + 1)) * Rational(factorial(mu - l - m)));
    if ((k - l) % 2 == 0) acc += t; else acc -= t;
  }
  return binomial(mu, k) * acc;
}

}  // namespace su2chan
