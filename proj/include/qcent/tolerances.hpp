// tolerances.hpp -- every numeric gate in the library reads from this table.
//
// Nothing elsewhere hard-codes a tolerance; tests that want to prove a gate
// actually bites can tighten a field and watch the failure appear.
#pragma once

#include <cstdlib>

namespace qcent {

struct Tolerances {
  // Hermiticity: max |M - M^dagger| entry, relative to max |M| entry.
  double herm = 1e-10;
  // Eigenvalue floor: eigenvalues in [-psd, 0) are clamped to 0 before
  // entropies; anything below -psd invalidates the operator.
  double psd = 1e-10;
  // Eigendecomposition reconstruction, Frobenius-relative.
  double recon = 1e-9;
  // Generic numeric comparisons in property checks and reports.
  double num = 1e-8;
  // Trace preservation of channels, and the trace <= 1 + tr gate on states.
  double tp = 1e-8;
  double tr = 1e-8;
  // Rank cut: eigenvalues below rank * lambda_max count as zero.
  double rank = 1e-8;
  // Root finding (Gibbs parameter), relative.
  double root = 1e-8;
  // Partition-sum tail certificate, relative to the retained sum.
  double tail = 1e-9;
  // Ensemble-average reconstruction in convex-roof decompositions.
  double decomp = 1e-8;
  // Convex-roof agreement scale.
  double roof = 1e-4;

  // QCENT_TOL overrides num only; everything else stays pinned.
  static Tolerances from_env() {
    Tolerances t;
    if (const char* s = std::getenv("QCENT_TOL")) {
      char* end = nullptr;
      double v = std::strtod(s, &end);
      if (end != s && v > 0) t.num = v;
    }
    return t;
  }
};

// Process-wide table. Mutable so tests can pin their own gates.
inline Tolerances& tol() {
  static Tolerances t = Tolerances::from_env();
  return t;
}

}  // namespace qcent
