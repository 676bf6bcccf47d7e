#pragma once

// The curv4 subcommands as library functions. Each returns the text for
// stdout and stderr plus the process exit code:
//   0 success, 1 failed assertion or check, 2 parse/usage error,
//   3 non-Einstein input, 4 optimisation infeasible at the requested resolution.

#include "curv4/berger.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace curv4::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertFailed = 1,
  kExitParseError = 2,
  kExitNonEinstein = 3,
  kExitInfeasible = 4,
};

struct GlobalOptions {
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  bool machine = false;
  std::optional<int> grid;
  std::optional<int> depth;
  int threads = 0;
};

struct CommandOutput {
  std::string out;
  std::string err;
  int exit_code = kExitOk;
};

CommandOutput cmd_decompose(const std::string& path, const GlobalOptions& g);

CommandOutput cmd_check(const std::string& path, const std::optional<std::string>& assert_condition,
                        const GlobalOptions& g);

/// which: all, thm2, thm3, prop12, prop13. With lam3 set, prop13 evaluates
/// that single value instead of its 50-point sweep.
CommandOutput cmd_verify_bounds(const std::string& which, std::optional<double> lam3,
                                const GlobalOptions& g);

CommandOutput cmd_sample(std::size_t count, const std::optional<std::string>& condition,
                         const GlobalOptions& g);

CommandOutput cmd_table(std::size_t samples, const GlobalOptions& g);

/// Sample `index` of the stream used by `sample` and `table` (lambda = 1).
/// Box half-widths cycle through 2, 1, 1/2, 1/4 so that sharply pinched
/// forms are represented as well as very negative ones.
BergerForm mixture_sample(std::uint64_t seed, std::uint64_t index);

}  // namespace curv4::cli
