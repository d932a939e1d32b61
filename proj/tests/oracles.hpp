#pragma once

// Independent reference computations used only by the tests. None of these
// share code paths with the library beyond exact arithmetic.

#include <cmath>
#include <complex>
#include <numbers>

#include "su2chan/exactnum.hpp"
#include "su2chan/intertwine.hpp"
#include "su2chan/quadrature.hpp"

namespace oracle {

using su2chan::binomial;
using su2chan::Rational;

// Integral form: J(z^a w^b) is the coefficient of z^a w^b in
// (z - w)^k (1 + t z)^(mu-k) (1 + t w)^(nu-k), times |z^a|^2 |w^b|^2.
inline Rational jk_integral(const su2chan::ChannelSpec& s, int a, int b) {
  Rational c;
  for (int j = 0; j <= s.k; ++j) {
    if (a - j < 0 || b - s.k + j < 0) continue;
    Rational t = binomial(s.k, j) * binomial(s.mu - s.k, a - j) * binomial(s.nu - s.k, b - s.k + j);
    if ((s.k - j) % 2 == 0) c += t; else c -= t;
  }
  return c / (binomial(s.mu, a) * binomial(s.nu, b));
}

// Inner sum from the Berezin-sum derivation, before the Gauss reduction.
inline Rational e_nu_inner_sum(const su2chan::ChannelSpec& s, int l) {
  Rational acc;
  for (int i = l; i <= s.k; ++i) {
    Rational t = binomial(s.k, i) * binomial(s.k, i) * binomial(i, l) / binomial(s.nu, s.k - i);
    if ((i - l) % 2 == 0) acc += t; else acc -= t;
  }
  return acc;
}

// Gauss: 2F1(-n, b; c; 1) = (c-b)_n / (c)_n.
inline Rational gauss_2f1(int n, const Rational& b, const Rational& c) {
  return su2chan::rising_pochhammer(c - b, n) / su2chan::rising_pochhammer(c, n);
}

// B_nu applied to s^m/(1+|s|^2)^m and evaluated at z, by quadrature of the
// explicit integral int |1 + z conj(s)|^(2 nu) / ((1+|z|^2)(1+|s|^2))^nu f(s) d iota(s).
inline std::complex<double> berezin_integral(int nu, int m, std::complex<double> z) {
  const su2chan::QuadratureGrid grid(nu + m + 2, 2 * (nu + m) + 2);
  std::complex<double> acc = 0;
  const double nz = 1.0 + std::norm(z);
  for (const auto& node : grid.nodes()) {
    const std::complex<double> s = node.z;
    const double ns = 1.0 + std::norm(s);
    const double kernel = std::pow(std::norm(1.0 + z * std::conj(s)) / (nz * ns), nu);
    acc += node.weight * kernel * std::pow(s, m) / std::pow(ns, m);
  }
  return acc;
}

inline std::complex<double> harmonic(int m, std::complex<double> z) {
  return std::pow(z, m) / std::pow(1.0 + std::norm(z), m);
}

// |z^i|^2 in H_nu by quadrature: (nu+1) int |z|^(2i) (1+|z|^2)^-nu d iota.
inline double monomial_norm_quadrature(int nu, int i) {
  const su2chan::QuadratureGrid grid(nu + 1, 1);
  double acc = 0;
  for (const auto& node : grid.nodes()) {
    const double r2 = std::norm(node.z);
    acc += node.weight * std::pow(r2, i) / std::pow(1.0 + r2, nu);
  }
  return acc * (nu + 1);
}

}  // namespace oracle
