#include "su2chan/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace su2chan {

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial chebyshev_entropy_poly(int degree) {
  if (degree < 0) throw Error(Errc::IndexOutOfRange, "degree must be nonnegative");
  const int n = degree + 1;
  auto entropy = [](double x) { return x <= 0.0 ? 0.0 : -x * std::log(x); };

  std::vector<double> c(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double y = std::cos(std::numbers::pi * (j + 0.5) / n);
    const double fx = entropy(0.5 * (1.0 + y));
    for (int k = 0; k < n; ++k) c[k] += fx * std::cos(k * std::numbers::pi * (j + 0.5) / n);
  }
  for (int k = 0; k < n; ++k) c[k] *= (k == 0 ? 1.0 : 2.0) / n;

  // T_k(2x - 1) in the monomial basis
  std::vector<double> out(n, 0.0);
  std::vector<double> prev(n, 0.0);
  std::vector<double> cur(n, 0.0);
  prev[0] = 1.0;
  if (n > 1) {
    cur[0] = -1.0;
    cur[1] = 2.0;
  }
  out[0] += c[0];
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i < n; ++i) out[i] += c[k] * cur[i];
    std::vector<double> next(n, 0.0);
    for (int i = 0; i < n; ++i) {
      next[i] += -2.0 * cur[i] - prev[i];
      if (i + 1 < n) next[i + 1] += 4.0 * cur[i];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {out};
}

Eigen::MatrixXcd channel_output_matrix(const ChannelSpec& spec, const IsotypicFunction& f) {
  return to_orthonormal_matrix(apply_channel(spec, toeplitz(f, spec.mu)));
}

double trace_moment(const Eigen::MatrixXcd& m, int n) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "moment order must be positive");
  Eigen::MatrixXcd p = m;
  for (int i = 1; i < n; ++i) p = p * m;
  return p.trace().real() / static_cast<double>(m.rows());
}

double trace_moment(const ChannelSpec& spec, const IsotypicFunction& f, int n) {
  return trace_moment(channel_output_matrix(spec, f), n);
}

TraceFunctional trace_functional(const Eigen::MatrixXcd& m, const Polynomial& phi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  TraceFunctional out;
  for (double lambda : es.eigenvalues()) {
    if (lambda < -1e-8 || lambda > 1.0 + 1e-8) {
      throw Error(Errc::SpectrumOutOfRange, "eigenvalue " + std::to_string(lambda) + " outside [0, 1]");
    }
    const double c = std::clamp(lambda, 0.0, 1.0);
    out.clamp = std::max(out.clamp, std::abs(c - lambda));
    out.value += phi(c);
  }
  out.value /= static_cast<double>(m.rows());
  return out;
}

TraceFunctional trace_functional(const ChannelSpec& spec, const IsotypicFunction& f, const Polynomial& phi) {
  return trace_functional(channel_output_matrix(spec, f), phi);
}

namespace {

double integrate_power_of_e(int mu, int k, const IsotypicFunction& f, int degree,
                            const std::function<double(double)>& g) {
  const IsotypicFunction e = e_limit_apply(mu, k, f);
  const SymbolEvaluator ev = e.evaluator();
  const int total = std::max(degree, 0) * e.level();
  const QuadratureGrid grid = QuadratureGrid::for_level(total);
  return integrate_invariant([&](std::complex<double> z) { return g(ev(z).real()); }, grid);
}

}  // namespace

double limit_moment(int mu, int k, const IsotypicFunction& f, int n) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "moment order must be positive");
  return integrate_power_of_e(mu, k, f, n, [n](double x) { return std::pow(x, n); });
}

double limit_functional(int mu, int k, const IsotypicFunction& f, const Polynomial& phi) {
  return integrate_power_of_e(mu, k, f, phi.degree(), [&phi](double x) { return phi(x); });
}

InValue i_n_integral(int n, int nu) {
  if (n < 1 || nu < 0) throw Error(Errc::IndexOutOfRange, "i_n_integral needs n >= 1, nu >= 0");
  if (n == 1) return {1, true};
  if (nu % 2 == 1) {
    const InValue even = i_n_integral(n, nu - 1);
    Rational scale = 1;
    for (int i = 0; i < n; ++i) scale *= Rational(nu + 1, nu);
    return {scale * even.value, false};
  }
  const int kappa = nu / 2;
  std::vector<Rational> sq(kappa + 1);
  for (int i = 0; i <= kappa; ++i) sq[i] = binomial(kappa, i) * binomial(kappa, i);
  std::vector<Rational> inv(nu + 1);
  for (int i = 0; i <= nu; ++i) inv[i] = Rational(1) / binomial(nu, i);

  std::vector<Rational> w(kappa + 1);
  for (int i = 0; i <= kappa; ++i) w[i] = sq[i] * inv[i];
  for (int step = 2; step < n; ++step) {
    std::vector<Rational> next(kappa + 1);
    for (int b = 0; b <= kappa; ++b) {
      Rational acc;
      for (int a = 0; a <= kappa; ++a) acc += w[a] * inv[a + b];
      next[b] = sq[b] * acc;
    }
    w = std::move(next);
  }
  Rational total;
  for (int i = 0; i <= kappa; ++i) total += w[i] * inv[i];
  return {total, true};
}

FundIneq fund_ineq_check(int kappa, int j) {
  if (kappa < 0 || j < 0 || j > kappa) throw Error(Errc::IndexOutOfRange, "need 0 <= j <= kappa");
  FundIneq r;
  r.kappa = kappa;
  r.j = j;
  for (int i = 0; i <= kappa; ++i) r.sum += binomial(kappa, i) / binomial(2 * kappa, i + j);
  r.identity = Rational(2 * kappa + 1, kappa + 1) / binomial(kappa, j);
  r.bound = Rational(2) / binomial(kappa, j);
  r.identity_holds = r.sum == r.identity;
  r.bound_strict = r.sum < r.bound;
  return r;
}

std::vector<MomentGap> moment_symbol_convergence(const std::vector<int>& nus, const IsotypicFunction& f,
                                                 int n, const QuadratureGrid& grid) {
  if (n < 1) throw Error(Errc::IndexOutOfRange, "moment order must be positive");
  const SymbolEvaluator fe = f.evaluator();
  std::vector<std::complex<double>> target;
  for (const auto& node : grid.nodes()) target.push_back(std::pow(fe(node.z), n));

  std::vector<MomentGap> out;
  for (int nu : nus) {
    const KernelOperator a = toeplitz(f, nu) * CRational(Rational(nu + 1));
    const Eigen::MatrixXcd m = to_orthonormal_matrix(a);
    Eigen::MatrixXcd p = m;
    for (int i = 1; i < n; ++i) p = p * m;

    std::vector<double> sqrt_binom(nu + 1);
    for (int i = 0; i <= nu; ++i) sqrt_binom[i] = std::sqrt(to_double(binomial(nu, i)));
    double sup = 0.0;
    Eigen::VectorXcd u(nu + 1);
    for (std::size_t q = 0; q < grid.nodes().size(); ++q) {
      const std::complex<double> z = grid.nodes()[q].z;
      const double s = std::sqrt(1.0 + std::norm(z));
      const std::complex<double> w = z / s;
      for (int i = 0; i <= nu; ++i) u(i) = sqrt_binom[i] * std::pow(w, i) * std::pow(1.0 / s, nu - i);
      const std::complex<double> value = u.transpose() * p * u.conjugate();
      sup = std::max(sup, std::abs(value - target[q]));
    }
    out.push_back({nu, sup});
  }
  return out;
}

std::optional<double> log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) return std::nullopt;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

std::optional<double> ConvergenceRecord::decay_order() const {
  std::vector<double> x(nus.begin(), nus.end());
  auto s = log_log_slope(x, gaps);
  if (!s) return std::nullopt;
  return -*s;
}

bool ConvergenceRecord::decays() const {
  if (gaps.empty()) return false;
  if (std::all_of(gaps.begin(), gaps.end(), [](double g) { return g <= kConvergedGap; })) return true;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    if (!(gaps[i] < gaps[i - 1])) return false;
  return gaps.back() < 0.25 * gaps.front();
}

KernelOperator random_rational_operator(int mu, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  CMatrix c(mu + 1, mu + 1);
  for (int i = 0; i <= mu; ++i)
    for (int j = 0; j <= mu; ++j) {
      Rational re(num(rng), den(rng));
      Rational im(num(rng), den(rng));
      c(i, j) = CRational(re, im);
    }
  return {mu, std::move(c)};
}

PsdInput random_psd_input(int mu, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-2, 2);
  for (;;) {
    KernelOperator a(mu);
    for (int r = 0; r <= mu; ++r) {
      CVector v(mu + 1);
      for (auto& x : v) x = CRational(Rational(entry(rng)), Rational(entry(rng)));
      a += rank_one(mu, v, v);
    }
    const CRational tr = operator_trace(a);
    if (tr.is_zero()) continue;
    a *= CRational(Rational(1) / tr.re);
    IsotypicFunction f = inverse_berezin(mu, symbol(a));
    return {std::move(a), std::move(f)};
  }
}

}  // namespace su2chan
