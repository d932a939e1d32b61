#pragma once

// Product quadrature for the invariant probability measure on CP^1.
//
// With t = r^2/(1+r^2) the measure d iota becomes dt dtheta / (2 pi) on
// [0,1] x [0, 2 pi), so Gauss-Legendre in t times the uniform rule in theta
// integrates A(z,z)/(1+|z|^2)^L exactly once n_radial >= L+1 and
// n_angular >= 2L+1.

#include <complex>
#include <functional>
#include <vector>

namespace su2chan {

struct QuadratureNode {
  std::complex<double> z;
  double weight;
};

class QuadratureGrid {
 public:
  QuadratureGrid(int n_radial, int n_angular);
  /// Smallest grid exact for symbols of the given level.
  static QuadratureGrid for_level(int level);

  int n_radial() const { return n_radial_; }
  int n_angular() const { return n_angular_; }
  const std::vector<double>& radial_nodes() const { return t_; }
  const std::vector<double>& radial_weights() const { return w_; }
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }

 private:
  int n_radial_;
  int n_angular_;
  std::vector<double> t_;
  std::vector<double> w_;
  std::vector<QuadratureNode> nodes_;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Throws NonFiniteSample if f is not finite at some node.
double integrate_invariant(const std::function<double(std::complex<double>)>& f,
                           const QuadratureGrid& grid);
std::complex<double> integrate_invariant_complex(
    const std::function<std::complex<double>(std::complex<double>)>& f, const QuadratureGrid& grid);

}  // namespace su2chan
