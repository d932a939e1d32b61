#pragma once

// Batch front end: verify, spectrum, converge, channel-dump.
//
// Exit codes: 0 all assertions hold, 1 a mathematical assertion failed,
// 2 usage or configuration error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace su2chan::cli {

enum class Command { Verify, Spectrum, Converge, ChannelDump };

struct RunConfig {
  Command command = Command::Verify;
  std::vector<int> mu;
  std::vector<int> k;  // empty: every k <= mu
  std::vector<int> nu;
  std::vector<int> n;
  std::optional<std::vector<double>> phi;  // ascending coefficients
  bool phi_entropy = false;
  std::uint64_t seed = 20240601;
  std::string out;      // empty: stdout
  std::string summary;  // converge only
  double tol = 1e-10;
  int samples = 1;
  bool corrupt_c2 = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

/// "3", "1,4,6", "0..3", "0..2,5" in ascending order without duplicates.
/// Throws std::invalid_argument on malformed or empty input.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Shortest round-trip decimal.
std::string format_double(double x);
/// Writes to path.tmp and renames over path; empty path writes to out.
void write_atomically(const std::string& path, const std::string& data, std::ostream& out);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_channel_dump(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace su2chan::cli
