#pragma once

// Command implementations behind the command-line tool.  Each returns the
// JSON document it would print plus a process exit code:
//   0  success
//   2  invalid arguments / domain violations
//   3  numeric failure (tolerance not met, non-convergence)
// Keeping these functions flag-free makes them directly testable; flag
// parsing lives in the executable.

#include <cstdint>
#include <string>

#include <json.hpp>

namespace sqc {

struct CommandResult {
  int exit_code = 0;
  nlohmann::json document;
};

struct CloneCmdOptions {
  std::string mode = "universal";  // or "phase-covariant"
  std::size_t clones = 2;
  double theta = 1.57079632679489661923;  // pi/2
  double phi = 0.0;
  std::string branch = "auto";  // "auto", "0", "1"
  std::uint64_t seed = 42;
  double tol = 1e-10;
};

struct VerifyCmdOptions {
  std::size_t m_min = 2;
  std::size_t m_max = 6;
  std::string mode = "both";  // "universal", "phase-covariant", "both"
  std::size_t samples = 10;
  std::uint64_t seed = 42;
  double tol = 1e-10;
};

struct TableCmdOptions {
  std::string mode = "universal";
  std::size_t clones = 2;
  double tol = 1e-10;
};

struct MpsCmdOptions {
  std::size_t clones = 2;
  int input_state = 0;  // 0 or 1: which branch target to decompose
  double tol = 1e-12;
};

CommandResult cmd_clone(const CloneCmdOptions& opt);
CommandResult cmd_verify(const VerifyCmdOptions& opt);
CommandResult cmd_table(const TableCmdOptions& opt);
CommandResult cmd_mps(const MpsCmdOptions& opt);

}  // namespace sqc
