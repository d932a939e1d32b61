#pragma once

// Symbol R_nu, Toeplitz map R_nu^*, Berezin transform B_nu = R_nu R_nu^*, and
// the operators E^nu_{mu,k} and E_{mu,k} acting on band-limited functions.

#include <complex>
#include <vector>

#include "su2chan/exactnum.hpp"
#include "su2chan/intertwine.hpp"
#include "su2chan/repspace.hpp"

namespace su2chan {

/// Float point-evaluator for A(z,z)/(1+|z|^2)^level, written in the bounded
/// variables z/sqrt(1+|z|^2) and 1/sqrt(1+|z|^2) so large levels do not overflow.
class SymbolEvaluator {
 public:
  explicit SymbolEvaluator(const KernelOperator& a);
  std::complex<double> operator()(std::complex<double> z) const;

 private:
  int level_;
  std::vector<std::complex<double>> coeffs_;  // row-major
};

/// f(z) = sum_m A_m(z,z) / (1+|z|^2)^level with A_m in the m-th isotypic
/// component of B(H_level). Two functions are equal iff their components
/// agree once written at a common level.
class IsotypicFunction {
 public:
  IsotypicFunction(int level, std::vector<KernelOperator> components);

  int level() const { return level_; }
  const std::vector<KernelOperator>& components() const { return components_; }
  const KernelOperator& component(int m) const { return components_.at(m); }
  /// Kernel of the whole function, sum of the components.
  KernelOperator total() const;
  std::complex<double> operator()(std::complex<double> z) const;
  SymbolEvaluator evaluator() const { return SymbolEvaluator(total()); }

  /// Largest m with a nonzero component; -1 for the zero function.
  int band() const;
  /// Same function written at a higher level.
  IsotypicFunction lifted(int level) const;
  /// Component m multiplied by scale(m).
  template <class F>
  IsotypicFunction map_components(F&& scale) const {
    std::vector<KernelOperator> out;
    out.reserve(components_.size());
    for (int m = 0; m <= level_; ++m) out.push_back(components_[m] * CRational(scale(m)));
    return {level_, std::move(out)};
  }

  IsotypicFunction& operator+=(const IsotypicFunction& o);
  IsotypicFunction& operator*=(const Rational& s);

  friend bool operator==(const IsotypicFunction& a, const IsotypicFunction& b);

 private:
  int level_;
  std::vector<KernelOperator> components_;
};

inline IsotypicFunction operator+(IsotypicFunction a, const IsotypicFunction& b) { return a += b; }
inline IsotypicFunction operator*(IsotypicFunction a, const Rational& s) { return a *= s; }
inline IsotypicFunction operator*(const Rational& s, IsotypicFunction a) { return a *= s; }

/// Point value A(z,z) / (1+|z|^2)^level without decomposing.
std::complex<double> evaluate_symbol(const KernelOperator& a, std::complex<double> z);
IsotypicFunction symbol(const KernelOperator& a);
/// R_nu^*(f) = T_f / (nu+1), exact.
KernelOperator toeplitz(const IsotypicFunction& f, int nu);

struct BerezinSpectrum {
  int level;
  std::vector<Rational> eigenvalues;  // m = 0..level
};

/// (nu!)^2 / ((nu+m+1)! (nu-m)!), zero for m > nu.
Rational berezin_eigenvalue(int nu, int m);
BerezinSpectrum berezin_spectrum(int nu);
IsotypicFunction berezin_apply(int nu, const IsotypicFunction& f);
IsotypicFunction inverse_berezin(int nu, const IsotypicFunction& f);

/// Coefficient of B_{mu-l} in E^nu_{mu,k}:
/// C^2 (-1)^(k-l) C(nu-k, k-l) (nu-k+l)! k! / (nu! l!).
Rational e_nu_coefficient(const ChannelSpec& spec, int l);
IsotypicFunction e_nu_apply(const ChannelSpec& spec, const IsotypicFunction& f);
/// C(mu,k) sum_l (-1)^(k-l) C(k,l) B_{mu-l}(f).
IsotypicFunction e_limit_apply(int mu, int k, const IsotypicFunction& f);

/// Eigenvalue of E_{mu,k} on the m-th harmonic via 3F2(-k, -m-mu-1, m-mu; -mu, -mu; 1).
Rational e_eigenvalue_3f2(int mu, int k, int m);
/// Same eigenvalue by the direct alternating sum of Berezin eigenvalues.
Rational e_eigenvalue_sum(int mu, int k, int m);

}  // namespace su2chan
