#pragma once

// Inequality verification harness.  Each check samples its own deterministic
// RNG stream (derived from the seed and the check name), records the worst
// violation it saw, and passes iff that worst stays at or below the check's
// tolerance.  Statistical checks compare against sampled suprema rather than
// certificates and are flagged as such.

#include <cstdint>
#include <string>
#include <vector>

namespace qcent {

struct CheckResult {
  std::string name;
  std::string suite;
  int samples = 0;
  double worst = 0.0;  // largest violation; <= 0 means every sample had slack
  double tolerance = 0.0;
  bool statistical = false;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;  // requested per-check budget; heavy checks cap it
  std::vector<CheckResult> checks;
  bool pass = false;  // all checks passed
};

// suite: core | channel | energy | bound | roof | all.
VerificationReport run_verification(const std::string& suite, std::uint64_t seed, int samples);

std::string report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);
std::string report_to_table(const VerificationReport& report);

}  // namespace qcent
