#include "su2chan/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "su2chan/intertwine.hpp"
#include "su2chan/limits.hpp"
#include "su2chan/symbolcalc.hpp"

namespace su2chan::cli {

using json = nlohmann::ordered_json;

namespace {

int parse_int(const std::string& s) {
  int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

json rational_json(const Rational& q) { return to_string(q); }

json kernel_json(const KernelOperator& a) {
  json rows = json::array();
  for (int i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.dim(); ++j) row.push_back({{"re", to_string(a(i, j).re)}, {"im", to_string(a(i, j).im)}});
    rows.push_back(std::move(row));
  }
  return {{"level", a.level()}, {"coeffs", std::move(rows)}};
}

json spec_json(const ChannelSpec& s) { return {{"mu", s.mu}, {"nu", s.nu}, {"k", s.k}}; }

json double_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json optional_json(const std::optional<double>& x) {
  if (!x) return nullptr;
  return double_json(*x);
}

std::vector<int> ks_for(const RunConfig& c, int mu) {
  std::vector<int> out;
  for (int k = 0; k <= mu; ++k)
    if (c.k.empty() || std::find(c.k.begin(), c.k.end(), k) != c.k.end()) out.push_back(k);
  return out;
}

std::vector<ChannelSpec> specs_for(const RunConfig& c) {
  std::vector<ChannelSpec> out;
  for (int mu : c.mu)
    for (int nu : c.nu) {
      if (nu < mu) continue;
      for (int k : ks_for(c, mu)) out.push_back({mu, nu, k});
    }
  return out;
}

json config_json(const RunConfig& c) {
  json j;
  j["mu"] = c.mu;
  j["k"] = c.k;
  if (c.command == Command::Spectrum) return j;
  j["nu"] = c.nu;
  if (c.command == Command::Verify || c.command == Command::Converge) j["n"] = c.n;
  if (c.phi) j["phi"] = *c.phi;
  if (c.phi_entropy) j["phi"] = "entropy";
  j["seed"] = c.seed;
  if (c.command != Command::ChannelDump) j["samples"] = c.samples;
  if (c.command == Command::ChannelDump) j["tol"] = c.tol;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// One named group of exact checks; keeps the first counterexample.
struct Suite {
  std::string name;
  long cases = 0;
  long failures = 0;
  json witness = nullptr;

  void record(bool ok, const std::function<json()>& describe) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) witness = describe();
  }

  json to_json() const {
    return {{"name", name},
            {"status", failures == 0 ? "pass" : "fail"},
            {"cases", cases},
            {"failures", failures},
            {"witness", witness}};
  }
};

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::set<int> values;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw std::invalid_argument("empty item in list '" + text + "'");
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      values.insert(parse_int(part));
      continue;
    }
    const int lo = parse_int(trim(part.substr(0, dots)));
    const int hi = parse_int(trim(part.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("empty range '" + part + "'");
    for (int v = lo; v <= hi; ++v) values.insert(v);
  }
  if (values.empty()) throw std::invalid_argument("empty list");
  return {values.begin(), values.end()};
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw std::invalid_argument("not a number: '" + part + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return {buf, ptr};
}

void write_atomically(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty()) {
    out << data;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp);
    f << data;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(c.seed);
  std::vector<Suite> suites;

  Suite pk{"schur_orthogonality_completeness"};
  for (int mu : c.mu)
    for (int nu : c.nu) {
      if (nu < mu) continue;
      const PkReport r = c.corrupt_c2
                             ? pk_orthogonality_check(mu, nu, [](const ChannelSpec& s) {
                                 return c_squared(s) * Rational(1001, 1000);
                               })
                             : pk_orthogonality_check(mu, nu);
      pk.record(r.ok(), [&] {
        json w{{"mu", mu}, {"nu", nu}, {"identity", r.failed}};
        if (r.witness) w["entry"] = {{"row", r.witness->row}, {"col", r.witness->col}, {"value", r.witness->value}};
        return w;
      });
    }
  suites.push_back(pk);

  Suite trace{"trace_preservation"};
  Suite esum{"e_nu_berezin_sum"};
  for (const auto& s : specs_for(c)) {
    for (int i = 0; i < c.samples; ++i) {
      const KernelOperator a = random_rational_operator(s.mu, rng);
      const CRational lhs = operator_trace(apply_normalized_channel(s, a));
      const CRational rhs = operator_trace(a);
      trace.record(lhs == rhs, [&] {
        return json{{"spec", spec_json(s)}, {"trace_in", to_string(rhs.re) + " + " + to_string(rhs.im) + "i"},
                    {"trace_out", to_string(lhs.re) + " + " + to_string(lhs.im) + "i"}};
      });
      const IsotypicFunction f = symbol(random_rational_operator(s.mu, rng));
      const IsotypicFunction got = symbol(apply_channel(s, toeplitz(f, s.mu)));
      const IsotypicFunction want = e_nu_apply(s, f);
      esum.record(got == want, [&] {
        json w{{"spec", spec_json(s)}};
        const int level = std::max(got.level(), want.level());
        const IsotypicFunction g = got.lifted(level);
        const IsotypicFunction e = want.lifted(level);
        for (int m = 0; m <= level; ++m)
          if (!(g.component(m) == e.component(m))) {
            w["component"] = m;
            break;
          }
        return w;
      });
    }
  }
  suites.push_back(trace);
  suites.push_back(esum);

  Suite spectral{"e_eigenvalues"};
  for (int mu : c.mu)
    for (int k : ks_for(c, mu))
      for (int m = 0; m <= mu + 1; ++m) {
        const Rational a = e_eigenvalue_3f2(mu, k, m);
        const Rational b = e_eigenvalue_sum(mu, k, m);
        spectral.record(a == b, [&] {
          return json{{"mu", mu}, {"k", k}, {"m", m}, {"hypergeometric", to_string(a)}, {"sum", to_string(b)}};
        });
      }
  suites.push_back(spectral);

  Suite gauss{"gauss_summation"};
  for (int n = 0; n <= 12; ++n)
    for (int b = -12; b <= 12; ++b)
      for (int cc = -20; cc <= 20; ++cc) {
        if (std::abs(cc) < n) continue;
        const Rational lhs = hyp2f1_terminating(n, b, cc);
        const Rational rhs = rising_pochhammer(Rational(cc - b), n) / rising_pochhammer(Rational(cc), n);
        gauss.record(lhs == rhs, [&] {
          return json{{"n", n}, {"b", b}, {"c", cc}, {"series", to_string(lhs)}, {"product", to_string(rhs)}};
        });
      }
  suites.push_back(gauss);

  const int nu_max = *std::max_element(c.nu.begin(), c.nu.end());
  Suite fund{"fundamental_inequality"};
  for (int kappa = 0; kappa <= nu_max; ++kappa)
    for (int j = 0; j <= kappa; ++j) {
      const FundIneq r = fund_ineq_check(kappa, j);
      fund.record(r.ok(), [&] {
        return json{{"kappa", kappa}, {"j", j}, {"sum", to_string(r.sum)}, {"identity", to_string(r.identity)},
                    {"bound", to_string(r.bound)}};
      });
    }
  suites.push_back(fund);

  Suite kernel{"kernel_integral_bound"};
  for (int n : c.n)
    for (int nu = 0; nu <= nu_max; ++nu) {
      const InValue v = i_n_integral(n, nu);
      const Rational bound = Rational(Integer(1) << (2 * n));
      kernel.record(v.value <= bound, [&] {
        return json{{"n", n}, {"nu", nu}, {"value", to_string(v.value)}, {"exact", v.exact}};
      });
    }
  suites.push_back(kernel);

  bool ok = true;
  json report{{"command", "verify"}, {"config", config_json(c)}, {"suites", json::array()}};
  for (const auto& s : suites) {
    report["suites"].push_back(s.to_json());
    if (s.failures > 0) {
      ok = false;
      err << "FAIL " << s.name << ": " << s.witness.dump() << "\n";
    }
  }
  report["ok"] = ok;
  write_atomically(c.out, dump(report), out);
  return ok ? kExitOk : kExitFailure;
}

// --- spectrum ---------------------------------------------------------------

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream&) {
  bool ok = true;
  json rows = json::array();
  for (int mu : c.mu) {
    for (int m = 0; m <= mu; ++m) {
      const Rational b = berezin_eigenvalue(mu, m);
      rows.push_back({{"operator", "B"}, {"mu", mu}, {"k", nullptr}, {"m", m}, {"exact", rational_json(b)},
                      {"float", to_double(b)}});
    }
    for (int k : ks_for(c, mu))
      for (int m = 0; m <= mu; ++m) {
        const Rational e = e_eigenvalue_3f2(mu, k, m);
        const Rational s = e_eigenvalue_sum(mu, k, m);
        const bool agree = e == s && (k != 0 || e == berezin_eigenvalue(mu, m));
        ok = ok && agree;
        rows.push_back({{"operator", "E"}, {"mu", mu}, {"k", k}, {"m", m}, {"exact", rational_json(e)},
                        {"sum", rational_json(s)}, {"agree", agree}, {"float", to_double(e)}});
      }
  }
  json report{{"command", "spectrum"}, {"config", config_json(c)}, {"rows", rows}, {"ok", ok}};
  write_atomically(c.out, dump(report), out);
  return ok ? kExitOk : kExitFailure;
}

// --- converge ---------------------------------------------------------------

int cmd_converge(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(c.seed);
  std::optional<Polynomial> phi;
  if (c.phi_entropy) phi = chebyshev_entropy_poly(8);
  if (c.phi) phi = Polynomial{*c.phi};

  std::string csv = "mu,nu,k,n_or_phi,lhs,rhs,gap\n";
  json records = json::array();
  bool ok = true;
  for (int mu : c.mu)
    for (int k : ks_for(c, mu))
      for (int sample = 0; sample < c.samples; ++sample) {
        const PsdInput in = random_psd_input(mu, rng);
        std::vector<Eigen::MatrixXcd> outputs;
        for (int nu : c.nu) outputs.push_back(channel_output_matrix({mu, nu, k}, in.f));

        auto finish = [&](ConvergenceRecord r) {
          for (std::size_t i = 0; i < r.nus.size(); ++i)
            csv += std::to_string(mu) + "," + std::to_string(r.nus[i]) + "," + std::to_string(k) + "," + r.order +
                   "," + format_double(r.lhs[i]) + "," + format_double(r.rhs) + "," + format_double(r.gaps[i]) + "\n";
          const bool decays = r.decays();
          const bool converged = std::all_of(r.gaps.begin(), r.gaps.end(),
                                             [](double g) { return g <= ConvergenceRecord::kConvergedGap; });
          if (!decays) {
            ok = false;
            err << "FAIL mu=" << mu << " k=" << k << " sample=" << sample << " " << r.order
                << ": gap sequence does not decay\n";
          }
          json g = json::array();
          for (double x : r.gaps) g.push_back(double_json(x));
          records.push_back({{"mu", mu},
                             {"k", k},
                             {"sample", sample},
                             {"order", r.order},
                             {"nu", r.nus},
                             {"rhs", double_json(r.rhs)},
                             {"gaps", g},
                             {"decay_order", converged ? json(nullptr) : optional_json(r.decay_order())},
                             {"converged", converged},
                             {"decays", decays}});
        };

        for (int n : c.n) {
          ConvergenceRecord r;
          r.mu = mu;
          r.k = k;
          r.order = "n=" + std::to_string(n);
          r.nus = c.nu;
          r.rhs = limit_moment(mu, k, in.f, n);
          for (const auto& m : outputs) {
            r.lhs.push_back(trace_moment(m, n));
            r.gaps.push_back(std::abs(r.lhs.back() - r.rhs));
          }
          finish(std::move(r));
        }
        if (phi) {
          ConvergenceRecord r;
          r.mu = mu;
          r.k = k;
          r.order = "phi";
          r.nus = c.nu;
          r.rhs = limit_functional(mu, k, in.f, *phi);
          for (const auto& m : outputs) {
            r.lhs.push_back(trace_functional(m, *phi).value);
            r.gaps.push_back(std::abs(r.lhs.back() - r.rhs));
          }
          finish(std::move(r));
        }
      }

  write_atomically(c.out, csv, out);
  if (!c.summary.empty()) {
    json summary{{"command", "converge"}, {"config", config_json(c)}, {"records", records}, {"ok", ok}};
    write_atomically(c.summary, dump(summary), out);
  }
  return ok ? kExitOk : kExitFailure;
}

// --- channel-dump -----------------------------------------------------------

int cmd_channel_dump(const RunConfig& c, std::ostream& out, std::ostream&) {
  std::mt19937_64 rng(c.seed);
  bool ok = true;
  json channels = json::array();
  for (const auto& s : specs_for(c)) {
    const Rational c2 = c_squared(s);
    RMatrix jj = jk_matrix(s).dense() * jk_adjoint_matrix(s);
    jj.scale(c2);
    const bool schur = jj == RMatrix::identity(s.target_dim());
    const KernelOperator a = random_rational_operator(s.mu, rng);
    const KernelOperator t = apply_normalized_channel(s, a);
    const bool tp = operator_trace(t) == operator_trace(a);
    const double choi_min = min_hermitian_eigenvalue(choi_matrix(s));
    const bool cp = choi_min >= -c.tol;
    ok = ok && schur && tp && cp;
    channels.push_back({{"spec", spec_json(s)},
                        {"c_squared", rational_json(c2)},
                        {"normalization", rational_json(normalization_factor(s))},
                        {"schur_identity", schur},
                        {"trace_preserving", tp},
                        {"choi_min_eigenvalue", double_json(choi_min)},
                        {"completely_positive", cp},
                        {"input", kernel_json(a)},
                        {"output", kernel_json(t)}});
  }
  json report{{"command", "channel-dump"}, {"config", config_json(c)}, {"channels", channels}, {"ok", ok}};
  write_atomically(c.out, dump(report), out);
  return ok ? kExitOk : kExitFailure;
}

// --- entry point ------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SU(2) channels, Berezin transforms and trace limits"};
  app.require_subcommand(1);

  struct Raw {
    std::string mu, k, nu, n, phi, out, summary;
    std::uint64_t seed = 20240601;
    double tol = 1e-10;
    int samples = 1;
    bool corrupt_c2 = false;
  };
  Raw raw;
  auto add_common = [&raw](CLI::App* sub) {
    sub->add_option("--mu", raw.mu, "mu values: list or a..b range");
    sub->add_option("--k", raw.k, "k values (default: all k <= mu)");
    sub->add_option("--nu", raw.nu, "nu values: list or a..b range");
    sub->add_option("--seed", raw.seed, "seed for every random input");
    sub->add_option("--out", raw.out, "output file (default: stdout)");
    sub->add_option("--tol", raw.tol, "float tolerance");
  };

  CLI::App* verify = app.add_subcommand("verify", "exact identity sweeps");
  add_common(verify);
  verify->add_option("--n", raw.n, "orders for the kernel integral bound");
  verify->add_option("--samples", raw.samples, "random inputs per spec");
  verify->add_flag("--corrupt-c2", raw.corrupt_c2, "perturb the Schur constant (fault injection)")
      ->group("Testing");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Berezin and E eigenvalue tables");
  add_common(spectrum);

  CLI::App* converge = app.add_subcommand("converge", "trace moments against their limits");
  add_common(converge);
  converge->add_option("--n", raw.n, "moment orders");
  converge->add_option("--phi", raw.phi, "polynomial coefficients, ascending; or 'entropy'");
  converge->add_option("--samples", raw.samples, "random inputs per (mu, k)");
  converge->add_option("--summary", raw.summary, "summary JSON file");

  CLI::App* dump_cmd = app.add_subcommand("channel-dump", "channel kernels and structure checks");
  add_common(dump_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  RunConfig c;
  std::string mu_default = "0..3";
  std::string nu_default = "0..7";
  std::string n_default = "1..4";
  if (spectrum->parsed()) {
    c.command = Command::Spectrum;
    mu_default = "0..6";
  } else if (converge->parsed()) {
    c.command = Command::Converge;
    mu_default = "1";
    nu_default = "10,20,40,80";
  } else if (dump_cmd->parsed()) {
    c.command = Command::ChannelDump;
    mu_default = "1";
    nu_default = "2";
  }

  try {
    c.mu = parse_int_list(raw.mu.empty() ? mu_default : raw.mu);
    c.nu = parse_int_list(raw.nu.empty() ? nu_default : raw.nu);
    c.n = parse_int_list(raw.n.empty() ? n_default : raw.n);
    if (!raw.k.empty()) c.k = parse_int_list(raw.k);
    if (raw.phi == "entropy") {
      c.phi_entropy = true;
    } else if (!raw.phi.empty()) {
      c.phi = parse_double_list(raw.phi);
    }
    for (int v : c.mu)
      if (v < 0) throw std::invalid_argument("mu must be nonnegative");
    for (int v : c.nu)
      if (v < 0) throw std::invalid_argument("nu must be nonnegative");
    for (int v : c.k)
      if (v < 0) throw std::invalid_argument("k must be nonnegative");
    for (int v : c.n)
      if (v < 1) throw std::invalid_argument("moment orders start at 1");
    if (raw.samples < 1) throw std::invalid_argument("samples must be positive");
    if (!(raw.tol > 0)) throw std::invalid_argument("tol must be positive");
    if (c.command != Command::Spectrum && specs_for(c).empty()) {
      throw std::invalid_argument("no (mu, nu, k) with 0 <= k <= mu <= nu in the configured ranges");
    }
    if (c.command == Command::Spectrum) {
      bool any = false;
      for (int mu : c.mu) any = any || !ks_for(c, mu).empty();
      if (!any) throw std::invalid_argument("no (mu, k) with k <= mu in the configured ranges");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  c.seed = raw.seed;
  c.out = raw.out;
  c.summary = raw.summary;
  c.tol = raw.tol;
  c.samples = raw.samples;
  c.corrupt_c2 = raw.corrupt_c2;

  try {
    switch (c.command) {
      case Command::Verify: return cmd_verify(c, out, err);
      case Command::Spectrum: return cmd_spectrum(c, out, err);
      case Command::Converge: return cmd_converge(c, out, err);
      case Command::ChannelDump: return cmd_channel_dump(c, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitFailure;
}

}  // namespace su2chan::cli
