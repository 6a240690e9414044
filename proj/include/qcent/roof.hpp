#pragma once

// Convex-roof extensions of the output entropy.  A decomposition of a state
// rho into pure pieces rho = sum_i p_i psi_i psi_i^dag is parameterized by an
// isometry applied to the spectral decomposition; the roof value is the
// infimum of sum_i p_i H(Phi(psi_i psi_i^dag)) over all such decompositions.
// Entanglement of formation is the special case where Phi traces out the
// second tensor factor.

#include <cstdint>
#include <optional>
#include <vector>

#include "qcent/channel.hpp"
#include "qcent/entropy.hpp"
#include "qcent/linalg.hpp"

namespace qcent {

struct EnsembleDecomposition {
  std::vector<double> weights;  // p_i > 0, summing to Tr(rho)
  std::vector<Vector> states;   // unit vectors
};

// Builds the decomposition induced by an m x r isometry u (u^dag u = I_r,
// r = rank of rho): member i is sum_j u(i,j) sqrt(lambda_j) e_j, normalized,
// with its squared norm as weight.  Throws NotIsometry when u^dag u deviates
// from the identity, DimensionMismatch when u has the wrong number of
// columns, and BadDecomposition when the mixture fails to reconstruct rho.
EnsembleDecomposition decomposition_from_isometry(const DensityOperator& rho, const Matrix& u);

// sum_i p_i H(Phi(psi_i psi_i^dag)).
double ensemble_average_entropy(const KrausChannel& phi, const EnsembleDecomposition& ensemble);

struct RoofEstimate {
  double value = 0.0;
  EnsembleDecomposition best;
  int members = 0;
  int restarts = 0;
};

// Random-restart local search over isometries.  members == 0 picks
// min(rank^2, 16).  Restart streams are derived independently from the seed,
// so increasing the restart count never worsens the result for a fixed seed.
RoofEstimate roof_estimate(const KrausChannel& phi, const DensityOperator& rho,
                           std::uint64_t seed, int members = 0, int restarts = 32);

// Entanglement of formation on a bipartite state of dimension dim_a * dim_b.
RoofEstimate eof_estimate(const DensityOperator& rho, int dim_a, int dim_b, std::uint64_t seed,
                          int members = 0, int restarts = 32);

// Deterministic grid + coordinate refinement oracle for rank <= 2 states of
// input dimension <= 4.  Scans two-member and three-member decompositions
// (rank-1 states are a single pure piece).  points controls the grid
// resolution of the two-member scan.
RoofEstimate brute_force_roof(const KrausChannel& phi, const DensityOperator& rho,
                              int points = 64);

}  // namespace qcent
