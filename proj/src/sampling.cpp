#include "qcent/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "qcent/errors.hpp"

namespace qcent {

namespace {

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

Matrix thin_q(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

}  // namespace

DensityOperator random_state(int dim, Rng& rng, int rank) {
  if (dim < 1) throw Error(ErrorKind::OutOfRange, "dimension must be positive");
  if (rank == 0) rank = dim;
  if (rank < 1 || rank > dim)
    throw Error(ErrorKind::OutOfRange, "rank must lie in [1, dim]");
  Matrix g = ginibre(dim, rank, rng);
  Matrix m = g * g.adjoint();
  return DensityOperator::from_matrix(m / m.trace().real());
}

Vector random_pure_state(int dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::OutOfRange, "dimension must be positive");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

Matrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::OutOfRange, "dimension must be positive");
  return thin_q(ginibre(dim, dim, rng));
}

KrausChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
  if (dim_in < 1 || dim_out < 1 || kraus_count < 1)
    throw Error(ErrorKind::OutOfRange, "dimensions and Kraus count must be positive");
  if (dim_out * kraus_count < dim_in)
    throw Error(ErrorKind::OutOfRange,
                "no isometry exists: dim_out * kraus_count < dim_in");
  Matrix v = thin_q(ginibre(dim_out * kraus_count, dim_in, rng));
  std::vector<Matrix> kraus(kraus_count);
  for (int k = 0; k < kraus_count; ++k) kraus[k] = v.middleRows(k * dim_out, dim_out);
  return KrausChannel::from_kraus(kraus, ChannelKind::Channel);
}

ConstrainedPair random_energy_constrained_pair(const HamiltonianSpectrum& spec, double ebar,
                                               double eps, Rng& rng, int budget) {
  if (eps < 0.0 || eps > 1.0) throw Error(ErrorKind::OutOfRange, "eps must lie in [0, 1]");
  if (budget < 1) throw Error(ErrorKind::OutOfRange, "budget must be positive");
  std::vector<double> levels = generate_levels(spec);
  const int n = static_cast<int>(levels.size());
  if (ebar < levels.front())
    throw Error(ErrorKind::OutOfRange, "energy ceiling below the ground level");

  // Longest prefix whose running mean stays at or below the ceiling: Gaussian
  // draws on it have mean energy near that running mean, so rejection is
  // cheap.
  int support = 0;
  double run = 0.0;
  for (int k = 0; k < n; ++k) {
    run += levels[k];
    if (run / (k + 1) <= ebar) support = k + 1;
  }
  support = std::max(support, 1);

  auto energy_of = [&](const Matrix& m) {
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += levels[i] * m(i, i).real();
    return e;
  };

  auto draw = [&]() -> std::pair<DensityOperator, double> {
    for (int attempt = 0; attempt < budget; ++attempt) {
      Matrix g = ginibre(support, support, rng);
      Matrix small = g * g.adjoint();
      small /= small.trace().real();
      Matrix full = Matrix::Zero(n, n);
      full.topLeftCorner(support, support) = small;
      double e = energy_of(full);
      if (e <= ebar) return {DensityOperator::from_matrix(full), e};
    }
    throw Error(ErrorKind::SamplingBudgetExceeded,
                "no draw met the energy ceiling within the budget");
  };

  auto [rho, e_rho] = draw();
  auto [tau, e_tau] = draw();
  double x = eps * rng.uniform();
  Matrix mix = (1.0 - x) * rho.matrix() + x * tau.matrix();
  DensityOperator sigma = DensityOperator::from_matrix(mix);

  ConstrainedPair pair{rho, sigma, e_rho, (1.0 - x) * e_rho + x * e_tau, 0.0};
  pair.distance = trace_distance(rho, sigma);
  return pair;
}

}  // namespace qcent
