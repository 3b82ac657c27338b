#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpsgs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitClaimFailed = 4;

enum class Command { Classify, BuildH, GroundStates, Mps, Verify, Sweep };

struct JobConfig {
  Command command = Command::Classify;
  /// classify: CSpace JSON path, "-" for stdin.
  std::string input = "-";
  std::string family;
  /// Inline JSON, or @path.
  std::string params;
  int n_sites = 0;
  /// build-h: "json" or "binary".
  std::string format = "json";
  /// Empty writes to stdout.
  std::string output;
  /// mps: inline JSON matrices, or @path.
  std::string a0;
  std::string a1;
  double tol = 1e-9;
  double kernel_tol = 1e-9;
  int lowest_k = 16;
  double rank_tol = 1e-10;
  /// sweep axes "name:lo..hi:count"; name may carry a .re/.im suffix for
  /// complex parameters.
  std::vector<std::string> grid;
  /// Start the odd-parity F112 sum at k = 0.
  bool odd_from_zero = false;
};

/// Executes a validated job; never throws. Errors go to `err` with the
/// matching exit code.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and dispatches to run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpsgs::cli
