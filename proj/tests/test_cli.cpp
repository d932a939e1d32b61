#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "su2chan/cli.hpp"
#include "su2chan/exactnum.hpp"
#include "su2chan/symbolcalc.hpp"

using namespace su2chan;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "su2chan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "su2chan_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("integer list parsing") {
  CHECK(cli::parse_int_list("3") == std::vector<int>{3});
  CHECK(cli::parse_int_list("4,1,6") == std::vector<int>{1, 4, 6});
  CHECK(cli::parse_int_list("0..3") == std::vector<int>{0, 1, 2, 3});
  CHECK(cli::parse_int_list("0..2, 5, 1") == std::vector<int>{0, 1, 2, 5});
  CHECK(cli::parse_int_list("-1..1") == std::vector<int>{-1, 0, 1});
  for (const char* bad : {"", "a", "1,,2", "3..1", "1..", "..2", "1.5", "2,"}) {
    CHECK_THROWS_AS(cli::parse_int_list(bad), std::invalid_argument);
  }
}

TEST_CASE("double list parsing and formatting") {
  CHECK(cli::parse_double_list("0,1,-0.5") == std::vector<double>{0, 1, -0.5});
  CHECK_THROWS_AS(cli::parse_double_list("1,x"), std::invalid_argument);
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5, 12345.678}) {
    CHECK(std::stod(cli::format_double(x)) == x);
  }
  CHECK(cli::format_double(0.5) == "0.5");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == cli::kExitConfig);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitConfig);
  CHECK(run_cli({"verify", "--bogus"}).code == cli::kExitConfig);
  CHECK(run_cli({"verify", "--mu", "x"}).code == cli::kExitConfig);
  CHECK(run_cli({"verify", "--mu", "3..1"}).code == cli::kExitConfig);
  CHECK(run_cli({"verify", "--mu", "5", "--nu", "3"}).code == cli::kExitConfig);
  CHECK(run_cli({"verify", "--mu", "-1"}).code == cli::kExitConfig);
  CHECK(run_cli({"converge", "--n", "0"}).code == cli::kExitConfig);
  CHECK(run_cli({"converge", "--phi", "1,a"}).code == cli::kExitConfig);
  CHECK(run_cli({"spectrum", "--mu", "1", "--k", "3"}).code == cli::kExitConfig);
  CHECK(run_cli({"channel-dump", "--samples", "2"}).code == cli::kExitConfig);
  const Result help = run_cli({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("converge") != std::string::npos);
}

TEST_CASE("verify passes and reports every suite") {
  const Result r = run_cli({"verify", "--mu", "0..2", "--nu", "0..5", "--samples", "2"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["command"] == "verify");
  REQUIRE(j["suites"].size() == 7);
  for (const auto& s : j["suites"]) {
    CHECK(s["status"] == "pass");
    CHECK(s["cases"].get<long>() > 0);
    CHECK(s["failures"] == 0);
    CHECK(s["witness"].is_null());
  }
}

TEST_CASE("corrupted Schur constant is caught with a witness") {
  const Result r = run_cli({"verify", "--mu", "1..2", "--nu", "2..4", "--corrupt-c2"});
  CHECK(r.code == cli::kExitFailure);
  const json j = json::parse(r.out);
  CHECK(j["ok"] == false);
  const auto& s = j["suites"][0];
  CHECK(s["name"] == "schur_orthogonality_completeness");
  CHECK(s["status"] == "fail");
  REQUIRE(s["witness"].is_object());
  CHECK(s["witness"]["mu"] == 1);
  CHECK(s["witness"]["nu"] == 2);
  CHECK(s["witness"]["entry"]["value"].get<std::string>() != "1");
  CHECK(r.err.find("FAIL") != std::string::npos);
}

TEST_CASE("spectrum rows agree with the library") {
  const Result r = run_cli({"spectrum", "--mu", "0..3"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  int b_rows = 0, e_rows = 0;
  for (const auto& row : j["rows"]) {
    const int mu = row["mu"], m = row["m"];
    if (row["operator"] == "B") {
      ++b_rows;
      CHECK(parse_rational(row["exact"].get<std::string>()) == berezin_eigenvalue(mu, m));
    } else {
      ++e_rows;
      const int k = row["k"];
      CHECK(row["agree"] == true);
      CHECK(parse_rational(row["exact"].get<std::string>()) == e_eigenvalue_sum(mu, k, m));
      CHECK(row["float"].get<double>() == doctest::Approx(to_double(e_eigenvalue_sum(mu, k, m))));
    }
  }
  CHECK(b_rows == 1 + 2 + 3 + 4);
  CHECK(e_rows == 1 + 4 + 9 + 16);
}

TEST_CASE("converge writes CSV and summary") {
  const auto csv = scratch("conv.csv");
  const auto summary = scratch("conv.json");
  const Result r = run_cli({"converge", "--mu", "1", "--n", "1..2", "--phi", "entropy", "--out", csv.string(),
                            "--summary", summary.string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "mu,nu,k,n_or_phi,lhs,rhs,gap");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    const double lhs = std::stod(cells[4]), rhs = std::stod(cells[5]), gap = std::stod(cells[6]);
    CHECK(gap == std::abs(lhs - rhs));
  }
  CHECK(rows == 2 * 3 * 4);  // k in {0,1}, orders n=1, n=2, phi; four nu
  const json j = json::parse(slurp(summary));
  CHECK(j["ok"] == true);
  REQUIRE(j["records"].size() == 6);
  for (const auto& rec : j["records"]) {
    CHECK(rec["decays"] == true);
    if (rec["order"] == "n=1") {
      CHECK(rec["converged"] == true);
      CHECK(rec["decay_order"].is_null());
    } else {
      CHECK(rec["decay_order"].get<double>() > 0.8);
    }
  }
  CHECK_FALSE(std::filesystem::exists(csv.string() + ".tmp"));
}

TEST_CASE("output is deterministic for a fixed seed") {
  const std::vector<std::string> conv{"converge", "--mu", "2", "--k", "1", "--n", "2", "--nu", "4,8"};
  CHECK(run_cli(conv).out == run_cli(conv).out);
  const std::vector<std::string> ver{"verify", "--mu", "0..2", "--nu", "2..4", "--seed", "7"};
  CHECK(run_cli(ver).out == run_cli(ver).out);
  const std::vector<std::string> dump{"channel-dump", "--mu", "2", "--nu", "3"};
  CHECK(run_cli(dump).out == run_cli(dump).out);
  auto seeded = dump;
  seeded.insert(seeded.end(), {"--seed", "8"});
  CHECK(run_cli(seeded).out != run_cli(dump).out);
}

TEST_CASE("channel-dump kernels are exact and trace preserving") {
  const Result r = run_cli({"channel-dump", "--mu", "2", "--nu", "3"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  REQUIRE(j["channels"].size() == 3);
  for (const auto& ch : j["channels"]) {
    const ChannelSpec s{ch["spec"]["mu"], ch["spec"]["nu"], ch["spec"]["k"]};
    CHECK(parse_rational(ch["c_squared"].get<std::string>()) == c_squared(s));
    CHECK(ch["schur_identity"] == true);
    CHECK(ch["trace_preserving"] == true);
    CHECK(ch["completely_positive"] == true);
    CHECK(ch["choi_min_eigenvalue"].get<double>() >= -1e-10);

    auto kernel = [](const json& k) {
      const int level = k["level"];
      CMatrix m(level + 1, level + 1);
      for (int i = 0; i <= level; ++i)
        for (int jj = 0; jj <= level; ++jj)
          m(i, jj) = CRational(parse_rational(k["coeffs"][i][jj]["re"].get<std::string>()),
                               parse_rational(k["coeffs"][i][jj]["im"].get<std::string>()));
      return KernelOperator(level, std::move(m));
    };
    const KernelOperator in = kernel(ch["input"]);
    const KernelOperator out = kernel(ch["output"]);
    CHECK(in.level() == s.mu);
    CHECK(out.level() == s.target_level());
    CHECK(apply_normalized_channel(s, in) == out);
  }
}
