// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "su2chan/intertwine.hpp"
#include "su2chan/limits.hpp"
#include "su2chan/symbolcalc.hpp"

using namespace su2chan;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

bool run_criterion(int id, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.ok;
  std::ostringstream line;
  if (budget_s > 0 && secs >= budget_s) {
    ok = false;
    line << "; over time budget " << budget_s << " s";
  }
  std::printf("criterion %2d: %s  %s (%.2f s)%s\n", id, ok ? "PASS" : "FAIL", o.detail.c_str(), secs,
              line.str().c_str());
  std::fflush(stdout);
  return ok;
}

void fail(Outcome& o, const std::string& why) {
  if (o.ok) o.detail = why;
  o.ok = false;
}

// Fibonacci points on the sphere, stereographically projected from the north pole.
std::vector<std::complex<double>> sphere_points(int count) {
  std::vector<std::complex<double>> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double h = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(1.0 - h * h);
    const double phi = golden * i;
    out.push_back(std::polar(r, phi) / (1.0 - h));
  }
  return out;
}

struct TraceInputs {
  std::vector<std::vector<PsdInput>> per_mu;  // mu = 0..3, five inputs each
};

const TraceInputs& trace_inputs() {
  static const TraceInputs inputs = [] {
    TraceInputs t;
    std::mt19937_64 rng(8);
    for (int mu = 0; mu <= 3; ++mu) {
      std::vector<PsdInput> v;
      for (int i = 0; i < 5; ++i) v.push_back(random_psd_input(mu, rng));
      t.per_mu.push_back(std::move(v));
    }
    return t;
  }();
  return inputs;
}

}  // namespace

// --known-failure N: criterion N still prints FAIL but does not set the exit code.
int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--known-failure") known.insert(std::atoi(argv[++i]));
  bool all = true;
  auto run_criterion = [&](int n, double budget, const std::function<Outcome()>& body) {
    const bool ok = ::run_criterion(n, budget, body);
    if (!ok && known.count(n)) {
      std::printf("criterion %2d: known failure, not counted in the exit code\n", n);
      return true;
    }
    return ok;
  };

  all &= run_criterion(1, 10, [] {
    Outcome o;
    int count = 0;
    for (int mu = 0; mu <= 4; ++mu)
      for (int nu = mu; nu <= 8; ++nu)
        for (int k = 0; k <= mu; ++k) {
          const ChannelSpec s{mu, nu, k};
          RMatrix expect = RMatrix::identity(s.target_dim());
          expect.scale(Rational(1) / c_squared(s));
          if (!(jk_matrix(s).dense() * jk_adjoint_matrix(s) == expect)) fail(o, "J_k J_k^* mismatch at " + to_string(s));
          ++count;
        }
    if (o.ok) o.detail = "J_k J_k^* = C^-2 I exactly on " + std::to_string(count) + " specs";
    return o;
  });

  all &= run_criterion(2, 30, [] {
    Outcome o;
    int count = 0;
    for (int mu = 0; mu <= 4; ++mu)
      for (int nu = mu; nu <= 8; ++nu) {
        const PkReport r = pk_orthogonality_check(mu, nu);
        if (!r.cross_zero || !r.complete) fail(o, r.failed);
        ++count;
      }
    if (o.ok) o.detail = "completeness and cross-orthogonality exact on " + std::to_string(count) + " (mu, nu)";
    return o;
  });

  all &= run_criterion(3, 60, [] {
    Outcome o;
    std::mt19937_64 rng(3);
    int specs = 0;
    double worst = 1e300;
    for (int mu = 0; mu <= 3; ++mu)
      for (int nu = mu; nu <= 7; ++nu)
        for (int k = 0; k <= mu; ++k) {
          const ChannelSpec s{mu, nu, k};
          ++specs;
          for (int t = 0; t < 20; ++t) {
            const KernelOperator a = random_rational_operator(mu, rng);
            if (!(operator_trace(apply_normalized_channel(s, a)) == operator_trace(a))) {
              fail(o, "trace not preserved at " + to_string(s));
            }
          }
          const double m = min_hermitian_eigenvalue(choi_matrix(s));
          worst = std::min(worst, m);
          if (m < -1e-10) fail(o, "Choi eigenvalue " + std::to_string(m) + " at " + to_string(s));
        }
    if (o.ok) {
      std::ostringstream d;
      d << "traces exact on " << specs << " specs x 20 inputs, min Choi eigenvalue " << worst;
      o.detail = d.str();
    }
    return o;
  });

  all &= run_criterion(4, 0, [] {
    Outcome o;
    const std::vector<std::complex<double>> pts{{0.3, 0.1}, {-1.2, 0.7}, {0.0, -2.5}, {4.0, 3.0}};
    double worst = 0;
    for (int nu = 0; nu <= 8; ++nu)
      for (int m = 0; m <= nu; ++m) {
        const double lambda = to_double(berezin_eigenvalue(nu, m));
        for (auto z : pts) {
          const double err = std::abs(oracle::berezin_integral(nu, m, z) - lambda * oracle::harmonic(m, z));
          worst = std::max(worst, err);
        }
      }
    if (worst > 1e-10) fail(o, "quadrature deviates by " + std::to_string(worst));
    std::ostringstream d;
    d << "closed form vs quadrature, max deviation " << worst;
    if (o.ok) o.detail = d.str();
    return o;
  });

  all &= run_criterion(5, 0, [] {
    Outcome o;
    std::mt19937_64 rng(5);
    int cases = 0;
    for (int mu = 0; mu <= 3; ++mu)
      for (int nu = mu; nu <= 7; ++nu)
        for (int k = 0; k <= mu; ++k) {
          const ChannelSpec s{mu, nu, k};
          for (int t = 0; t < 10; ++t) {
            const IsotypicFunction f = symbol(random_rational_operator(mu, rng));
            if (!(symbol(apply_channel(s, toeplitz(f, mu))) == e_nu_apply(s, f))) {
              fail(o, "symbol mismatch at " + to_string(s));
            }
            ++cases;
          }
        }
    if (o.ok) o.detail = "exact componentwise agreement on " + std::to_string(cases) + " cases";
    return o;
  });

  all &= run_criterion(6, 0, [] {
    Outcome o;
    for (int mu = 0; mu <= 6; ++mu)
      for (int k = 0; k <= mu; ++k) {
        for (int m = 0; m <= mu; ++m) {
          const Rational a = e_eigenvalue_3f2(mu, k, m);
          if (!(a == e_eigenvalue_sum(mu, k, m))) fail(o, "3F2 != sum");
          if (k == 0 && !(a == berezin_eigenvalue(mu, m))) fail(o, "k = 0 column differs from B_mu");
        }
        for (int m = mu + 1; m <= mu + 3; ++m)
          if (e_eigenvalue_3f2(mu, k, m) != 0 || e_eigenvalue_sum(mu, k, m) != 0) fail(o, "nonzero above mu");
      }
    if (o.ok) o.detail = "3F2 = sum exactly for mu <= 6; zero above mu; k = 0 matches Berezin";
    return o;
  });

  all &= run_criterion(7, 0, [] {
    Outcome o;
    Rational worst_ratio = 0;
    for (int n = 1; n <= 4; ++n) {
      const Rational bound(boost::multiprecision::pow(Integer(4), n));
      for (int nu = 0; nu <= 40; nu += 2) {
        const InValue v = i_n_integral(n, nu);
        if (!v.exact || v.value > bound) fail(o, "I_n bound fails at n=" + std::to_string(n));
        worst_ratio = std::max(worst_ratio, Rational(v.value / bound));
      }
    }
    for (int kappa = 0; kappa <= 30; ++kappa)
      for (int j = 0; j <= kappa; ++j) {
        const FundIneq r = fund_ineq_check(kappa, j);
        if (!r.identity_holds) fail(o, "identity fails at kappa=" + std::to_string(kappa));
        if (!r.bound_strict) fail(o, "bound fails at kappa=" + std::to_string(kappa));
      }
    std::ostringstream d;
    d << "I_n <= 4^n (max ratio " << to_double(worst_ratio) << "); identity and strict bound for kappa <= 30";
    if (o.ok) o.detail = d.str();
    return o;
  });

  all &= run_criterion(8, 300, [] {
    Outcome o;
    const std::vector<int> nus{10, 20, 40, 80};
    const std::vector<int> tail{80, 160, 320};
    const Polynomial phi = chebyshev_entropy_poly(8);
    int records = 0, converged = 0, failed = 0, tail_ok = 0;
    double min_order = 1e300;
    std::string first_failure;
    for (int mu = 0; mu <= 3; ++mu)
      for (int k = 0; k <= mu; ++k)
        for (const PsdInput& in : trace_inputs().per_mu[mu]) {
          std::vector<Eigen::MatrixXcd> outs;
          for (int nu : nus) outs.push_back(channel_output_matrix({mu, nu, k}, in.f));
          auto check = [&](ConvergenceRecord r, const std::string& label,
                           const std::function<double(const Eigen::MatrixXcd&)>& lhs) {
            ++records;
            if (r.decays()) {
              if (r.gaps.front() <= ConvergenceRecord::kConvergedGap) {
                ++converged;
              } else if (auto q = r.decay_order()) {
                min_order = std::min(min_order, *q);
              }
              return;
            }
            ++failed;
            ConvergenceRecord ext;
            ext.nus = tail;
            for (int nu : tail) ext.gaps.push_back(std::abs(lhs(channel_output_matrix({mu, nu, k}, in.f)) - r.rhs));
            if (ext.gaps[1] < ext.gaps[0] && ext.gaps[2] < ext.gaps[1]) ++tail_ok;
            if (first_failure.empty()) {
              std::ostringstream d;
              d << "mu=" << mu << " k=" << k << " " << label << " gaps";
              for (double g : r.gaps) d << " " << g;
              d << ", then at nu=160,320:";
              for (std::size_t i = 1; i < ext.gaps.size(); ++i) d << " " << ext.gaps[i];
              first_failure = d.str();
            }
          };
          for (int n = 1; n <= 4; ++n) {
            ConvergenceRecord r;
            r.nus = nus;
            r.rhs = limit_moment(mu, k, in.f, n);
            for (const auto& m : outs) r.gaps.push_back(std::abs(trace_moment(m, n) - r.rhs));
            check(r, "n=" + std::to_string(n), [n](const Eigen::MatrixXcd& m) { return trace_moment(m, n); });
          }
          ConvergenceRecord r;
          r.nus = nus;
          r.rhs = limit_functional(mu, k, in.f, phi);
          for (const auto& m : outs) r.gaps.push_back(std::abs(trace_functional(m, phi).value - r.rhs));
          check(r, "phi", [&phi](const Eigen::MatrixXcd& m) { return trace_functional(m, phi).value; });
        }
    std::ostringstream d;
    if (failed == 0) {
      d << records << " gap sequences decay (" << converged << " already at rounding level), min fitted order "
        << min_order;
    } else {
      o.ok = false;
      d << failed << " of " << records << " gap sequences fail the decay rule on nu=10..80 (" << tail_ok
        << " of them strictly decrease on nu=80,160,320); first: " << first_failure;
    }
    o.detail = d.str();
    return o;
  });

  all &= run_criterion(9, 0, [] {
    Outcome o;
    const auto pts = sphere_points(1000);
    int cases = 0;
    double worst = 0;
    for (int mu = 0; mu <= 3; ++mu)
      for (int k = 0; k <= mu; ++k)
        for (const PsdInput& in : trace_inputs().per_mu[mu]) {
          const double top = to_complex(operator_trace(toeplitz(in.f, mu))).real();
          const SymbolEvaluator e = e_limit_apply(mu, k, in.f).evaluator();
          for (auto z : pts) {
            const double v = e(z).real();
            worst = std::max({worst, -v, v - top});
            if (v < -1e-10 || v > top + 1e-10) fail(o, "E bound fails at mu=" + std::to_string(mu));
          }
          ++cases;
        }
    std::ostringstream d;
    d << "0 <= E(f) <= Tr R*f at 1000 points for " << cases << " (mu, k, f), worst excess " << std::max(worst, 0.0);
    if (o.ok) o.detail = d.str();
    return o;
  });

  all &= run_criterion(10, 0, [] {
    Outcome o;
    int cases = 0;
    for (int n = 0; n <= 12; ++n)
      for (int b = -12; b <= 12; ++b)
        for (int c = -20; c <= 20; ++c) {
          if (std::abs(c) < n) continue;
          if (!(hyp2f1_terminating(n, b, c) == oracle::gauss_2f1(n, b, c))) {
            fail(o, "mismatch at n=" + std::to_string(n) + " b=" + std::to_string(b) + " c=" + std::to_string(c));
          }
          ++cases;
        }
    if (o.ok) o.detail = "series equals (c-b)_n/(c)_n on " + std::to_string(cases) + " triples";
    return o;
  });

  return all ? 0 : 1;
}
