#pragma once

// Trace moments of channel outputs against their large-nu limits, the
// kernel-integral bound I_n(nu), and helpers for the convergence sweeps.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "su2chan/intertwine.hpp"
#include "su2chan/quadrature.hpp"
#include "su2chan/symbolcalc.hpp"

namespace su2chan {

/// Real polynomial, coefficients in ascending degree.
struct Polynomial {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;
};

/// Degree-d interpolant of -x log x at the Chebyshev points of [0, 1].
Polynomial chebyshev_entropy_poly(int degree = 8);

/// Orthonormal matrix of T(R_mu^*(f)) for the unnormalized channel T.
Eigen::MatrixXcd channel_output_matrix(const ChannelSpec& spec, const IsotypicFunction& f);

/// (1/dim) Tr(M^n) by repeated multiplication.
double trace_moment(const Eigen::MatrixXcd& m, int n);
double trace_moment(const ChannelSpec& spec, const IsotypicFunction& f, int n);

struct TraceFunctional {
  double value = 0.0;
  double clamp = 0.0;  // largest distance an eigenvalue was moved into [0, 1]
};

/// (1/dim) sum phi(lambda_i) over the spectrum of a hermitian M. Throws
/// SpectrumOutOfRange if an eigenvalue leaves [-1e-8, 1+1e-8].
TraceFunctional trace_functional(const Eigen::MatrixXcd& m, const Polynomial& phi);
TraceFunctional trace_functional(const ChannelSpec& spec, const IsotypicFunction& f, const Polynomial& phi);

/// Integral of E_{mu,k}(f)^n on a grid exact for that degree.
double limit_moment(int mu, int k, const IsotypicFunction& f, int n);
/// Integral of phi(E_{mu,k}(f)), exact for polynomial phi.
double limit_functional(int mu, int k, const IsotypicFunction& f, const Polynomial& phi);

struct InValue {
  Rational value;
  bool exact = true;  // false: an upper bound (odd nu)
};

/// Exact chain sum for even nu; ((nu+1)/nu)^n I_n(nu-1) for odd nu.
InValue i_n_integral(int n, int nu);

struct FundIneq {
  int kappa = 0;
  int j = 0;
  Rational sum;       // sum_i C(kappa,i) / C(2 kappa, i+j)
  Rational identity;  // (2 kappa + 1)/(kappa + 1) / C(kappa, j)
  Rational bound;     // 2 / C(kappa, j)
  bool identity_holds = false;
  bool bound_strict = false;

  bool ok() const { return identity_holds && bound_strict; }
};

FundIneq fund_ineq_check(int kappa, int j);

struct MomentGap {
  int nu = 0;
  double sup_gap = 0.0;
};

/// sup over the grid of |(nu+1)^n R_nu(R_nu^*(f)^n) - f^n| for each nu.
std::vector<MomentGap> moment_symbol_convergence(const std::vector<int>& nus, const IsotypicFunction& f,
                                                 int n, const QuadratureGrid& grid);

struct ConvergenceRecord {
  int mu = 0;
  int k = 0;
  std::string order;  // "n=2" or "phi=..."
  std::vector<int> nus;
  std::vector<double> lhs;
  double rhs = 0.0;
  std::vector<double> gaps;

  /// Least-squares slope of -log(gap) against log(nu); empty when some gap is 0.
  std::optional<double> decay_order() const;
  /// Gaps at or below this are treated as already converged.
  static constexpr double kConvergedGap = 1e-12;
  /// Strictly decreasing with the last gap below a quarter of the first,
  /// unless every gap is already at the converged floor.
  bool decays() const;
};

/// Least-squares slope of log(y) against log(x); empty if some y <= 0.
std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// --- random inputs ----------------------------------------------------------

/// Dense operator with entries p/q, |p| <= 9, 1 <= q <= 9.
KernelOperator random_rational_operator(int mu, std::mt19937_64& rng);

struct PsdInput {
  KernelOperator op;      // positive semidefinite, trace 1
  IsotypicFunction f;     // toeplitz(f, mu) == op
};

/// Sum of mu+1 rank-one projections onto small Gaussian-integer vectors,
/// scaled to trace 1, together with its exact Toeplitz preimage.
PsdInput random_psd_input(int mu, std::mt19937_64& rng);

}  // namespace su2chan
