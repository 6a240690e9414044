#pragma once

// Random test-point generators.  All draws come from an explicit Rng so every
// consumer is reproducible; nothing here touches global state.

#include "qcent/channel.hpp"
#include "qcent/energy.hpp"
#include "qcent/entropy.hpp"
#include "qcent/linalg.hpp"
#include "qcent/rng.hpp"

namespace qcent {

// Gaussian-matrix state: G G^dag normalized to unit trace.  rank == 0 draws a
// full-rank state, otherwise G has `rank` columns.
DensityOperator random_state(int dim, Rng& rng, int rank = 0);

Vector random_pure_state(int dim, Rng& rng);

Matrix random_unitary(int dim, Rng& rng);

// Channel from a Gaussian Stinespring isometry split into kraus_count blocks;
// requires dim_out * kraus_count >= dim_in.
KrausChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng);

struct ConstrainedPair {
  DensityOperator rho;
  DensityOperator sigma;
  double energy_rho = 0.0;
  double energy_sigma = 0.0;
  double distance = 0.0;  // trace distance, at most eps by construction
};

// Draws rho on the truncated level basis with mean energy at most ebar, then
// sigma = (1 - x) rho + x tau with x <= eps and tau equally constrained, so
// both the energy ceiling and the trace-distance ceiling hold exactly.
// States are supported on the longest level prefix whose running mean stays
// below ebar, and rejection keeps only draws under the ceiling; more than
// `budget` consecutive rejections raises SamplingBudgetExceeded.
ConstrainedPair random_energy_constrained_pair(const HamiltonianSpectrum& spec, double ebar,
                                               double eps, Rng& rng, int budget = 1000);

}  // namespace qcent
