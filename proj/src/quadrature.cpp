#include "su2chan/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "su2chan/error.hpp"

namespace su2chan {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "Gauss-Legendre needs at least one node");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // map [-1, 1] to [0, 1]
    x[i] = 0.5 * (1.0 - z);
    x[n - 1 - i] = 0.5 * (1.0 + z);
    w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

QuadratureGrid::QuadratureGrid(int n_radial, int n_angular) : n_radial_(n_radial), n_angular_(n_angular) {
  if (n_radial < 1 || n_angular < 1) throw Error(Errc::IndexOutOfRange, "grid sizes must be positive");
  gauss_legendre(n_radial, t_, w_);
  nodes_.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  for (int i = 0; i < n_radial; ++i) {
    const double r = std::sqrt(t_[i] / (1.0 - t_[i]));
    for (int j = 0; j < n_angular; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / n_angular;
      nodes_.push_back({std::polar(r, theta), w_[i] / n_angular});
    }
  }
}

QuadratureGrid QuadratureGrid::for_level(int level) {
  if (level < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  return {level + 1, 2 * level + 1};
}

double integrate_invariant(const std::function<double(std::complex<double>)>& f, const QuadratureGrid& grid) {
  double acc = 0.0;
  for (const auto& node : grid.nodes()) {
    const double v = f(node.z);
    if (!std::isfinite(v)) {
      throw Error(Errc::NonFiniteSample, "integrand not finite at |z|=" + std::to_string(std::abs(node.z)));
    }
    acc += node.weight * v;
  }
  return acc;
}

std::complex<double> integrate_invariant_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f, const QuadratureGrid& grid) {
  std::complex<double> acc = 0.0;
  for (const auto& node : grid.nodes()) {
    const std::complex<double> v = f(node.z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(Errc::NonFiniteSample, "integrand not finite at |z|=" + std::to_string(std::abs(node.z)));
    }
    acc += node.weight * v;
  }
  return acc;
}

}  // namespace su2chan
