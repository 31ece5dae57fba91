#pragma once

// Self-checking sweep used by the `verify` command: runs the whole pipeline
// for a range of clone numbers and records measured-versus-threshold
// results for every invariant the library promises.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sqc {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  std::string comparator;  // "<=", ">=", or "=="
  bool pass = false;
};

struct VerifyBlock {
  std::string mode;
  std::size_t m = 0;
  std::vector<VerifyCheck> checks;
  bool all_pass = true;
};

struct VerifyOptions {
  std::size_t m_min = 2;
  std::size_t m_max = 6;
  bool run_universal = true;
  bool run_phase_covariant = true;
  std::size_t samples = 10;
  std::uint64_t seed = 42;
  double tol = 1e-10;
};

std::vector<VerifyBlock> run_verification(const VerifyOptions& opt);

}  // namespace sqc
