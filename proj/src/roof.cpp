#include "qcent/roof.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qcent/errors.hpp"
#include "qcent/rng.hpp"
#include "qcent/tolerances.hpp"

namespace qcent {

namespace {

// Eigenvalues below this fraction of the leading one do not count toward the
// rank; the spectral factors they would contribute are numerically zero.
int state_rank(const EigenSystem& eig) {
  double top = std::max(eig.values(0), 0.0);
  double floor = std::max(tol().psd, 1e-12 * top);
  int r = 0;
  while (r < eig.values.size() && eig.values(r) > floor) ++r;
  return std::max(r, 1);
}

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

EnsembleDecomposition decomposition_from_isometry(const DensityOperator& rho, const Matrix& u) {
  const EigenSystem& eig = rho.eigensystem();
  const int r = state_rank(eig);
  if (u.cols() != r)
    throw Error(ErrorKind::DimensionMismatch, "isometry must have one column per rank");
  if (u.rows() < u.cols())
    throw Error(ErrorKind::DimensionMismatch, "isometry needs at least rank rows");
  double defect = (u.adjoint() * u - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (defect > tol().decomp) throw Error(ErrorKind::NotIsometry, "columns are not orthonormal");

  EnsembleDecomposition ens;
  const int m = static_cast<int>(u.rows());
  for (int i = 0; i < m; ++i) {
    Vector tilde = Vector::Zero(rho.dim());
    for (int j = 0; j < r; ++j)
      tilde += u(i, j) * std::sqrt(std::max(eig.values(j), 0.0)) * eig.vectors.col(j);
    double w = tilde.squaredNorm();
    if (w < 1e-15) continue;
    ens.weights.push_back(w);
    ens.states.push_back(tilde / std::sqrt(w));
  }

  Matrix recon = Matrix::Zero(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < ens.weights.size(); ++i)
    recon += ens.weights[i] * (ens.states[i] * ens.states[i].adjoint());
  double err = (recon - rho.matrix()).cwiseAbs().maxCoeff();
  if (err > tol().recon * std::max(1.0, eig.values(0)))
    throw Error(ErrorKind::BadDecomposition, "mixture does not reconstruct the state");
  return ens;
}

double ensemble_average_entropy(const KrausChannel& phi, const EnsembleDecomposition& ensemble) {
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.weights.size(); ++i)
    total += ensemble.weights[i] * output_entropy(phi, DensityOperator::pure(ensemble.states[i]));
  return total;
}

RoofEstimate roof_estimate(const KrausChannel& phi, const DensityOperator& rho,
                           std::uint64_t seed, int members, int restarts) {
  if (restarts < 1) throw Error(ErrorKind::OutOfRange, "need at least one restart");
  const int r = state_rank(rho.eigensystem());
  int m = members;
  if (m == 0) m = std::min(r * r, 16);
  if (m < r) throw Error(ErrorKind::OutOfRange, "member count below the state rank");

  auto objective = [&](const Matrix& u) {
    return ensemble_average_entropy(phi, decomposition_from_isometry(rho, u));
  };

  // The spectral decomposition itself is always a candidate; this pins the
  // estimate at or below the eigen-ensemble objective regardless of how the
  // random restarts fare.
  Matrix spectral = Matrix::Zero(m, r);
  spectral.topLeftCorner(r, r) = Matrix::Identity(r, r);
  double best = objective(spectral);
  Matrix best_u = spectral;

  Rng root(seed);
  for (int rr = 0; rr < restarts; ++rr) {
    Rng rng = root.stream(static_cast<std::uint64_t>(rr));
    Matrix u = thin_q(ginibre(m, r, rng));
    double val = objective(u);
    double step = 0.5;
    int stale = 0;
    for (int it = 0; it < 300 && step > 1e-5; ++it) {
      Matrix probe = thin_q(u + step * ginibre(m, r, rng));
      double s = objective(probe);
      if (s < val - 1e-14) {
        val = s;
        u = probe;
        stale = 0;
      } else if (++stale >= 10) {
        step *= 0.6;
        stale = 0;
      }
    }
    if (val < best) {
      best = val;
      best_u = u;
    }
  }

  RoofEstimate est;
  est.value = best;
  est.best = decomposition_from_isometry(rho, best_u);
  est.members = m;
  est.restarts = restarts;
  return est;
}

RoofEstimate eof_estimate(const DensityOperator& rho, int dim_a, int dim_b, std::uint64_t seed,
                          int members, int restarts) {
  if (dim_a < 1 || dim_b < 1 || rho.dim() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "state dimension must equal dim_a * dim_b");
  return roof_estimate(trace_out_second_channel(dim_a, dim_b), rho, seed, members, restarts);
}

// ----------------------------------------------------------------------------
// Brute-force oracle.
// ----------------------------------------------------------------------------

namespace {

// Coordinate-wise golden-section refinement of fn around x0 with per-axis
// bracket half-widths in span.  fn must be continuous; the refinement only
// polishes the basin the grid already identified.
std::vector<double> coordinate_refine(const std::function<double(const std::vector<double>&)>& fn,
                                      std::vector<double> x0, const std::vector<double>& span,
                                      double* value) {
  const double inv_phi = 0.6180339887498949;
  double best = fn(x0);
  for (int round = 0; round < 4; ++round) {
    for (std::size_t axis = 0; axis < x0.size(); ++axis) {
      double a = x0[axis] - span[axis];
      double b = x0[axis] + span[axis];
      auto eval = [&](double v) {
        std::vector<double> x = x0;
        x[axis] = v;
        return fn(x);
      };
      double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
      double f1 = eval(x1), f2 = eval(x2);
      for (int it = 0; it < 48; ++it) {
        if (f1 > f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + inv_phi * (b - a);
          f2 = eval(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - inv_phi * (b - a);
          f1 = eval(x1);
        }
      }
      double xm = (f1 < f2) ? x1 : x2;
      double fm = std::min(f1, f2);
      if (fm < best) {
        best = fm;
        x0[axis] = xm;
      }
    }
  }
  *value = best;
  return x0;
}

Matrix two_member_isometry(double theta, double phi_angle) {
  Matrix u(2, 2);
  double c = std::cos(theta), s = std::sin(theta);
  Complex ph = std::exp(Complex(0.0, phi_angle));
  u << Complex(c, 0.0), -s * std::conj(ph), s * ph, Complex(c, 0.0);
  return u;
}

// Three-member isometry for a rank-2 state.  The first column is a real unit
// vector (row phases absorb its phases); the second is a unit combination of
// the real orthonormal complement with one relative phase.
Matrix three_member_isometry(double a, double b, double t, double chi) {
  Eigen::Vector3d c1(std::cos(a), std::sin(a) * std::cos(b), std::sin(a) * std::sin(b));
  Eigen::Vector3d u(-std::sin(a), std::cos(a) * std::cos(b), std::cos(a) * std::sin(b));
  Eigen::Vector3d v(0.0, -std::sin(b), std::cos(b));
  Matrix iso(3, 2);
  Complex ph = std::exp(Complex(0.0, chi));
  for (int i = 0; i < 3; ++i) {
    iso(i, 0) = Complex(c1(i), 0.0);
    iso(i, 1) = std::cos(t) * u(i) + std::sin(t) * ph * v(i);
  }
  return iso;
}

}  // namespace

RoofEstimate brute_force_roof(const KrausChannel& phi, const DensityOperator& rho, int points) {
  if (points < 8) throw Error(ErrorKind::OutOfRange, "grid needs at least 8 points per axis");
  if (rho.dim() > 4) throw Error(ErrorKind::OutOfRange, "oracle supports dimension <= 4");
  const int r = state_rank(rho.eigensystem());
  if (r > 2) throw Error(ErrorKind::OutOfRange, "oracle supports rank <= 2");

  RoofEstimate est;
  est.restarts = 0;

  if (r == 1) {
    const EigenSystem& eig = rho.eigensystem();
    EnsembleDecomposition ens;
    ens.weights.push_back(rho.trace());
    ens.states.push_back(eig.vectors.col(0));
    est.value = ensemble_average_entropy(phi, ens);
    est.best = ens;
    est.members = 1;
    return est;
  }

  const double pi = std::acos(-1.0);

  auto obj2 = [&](const std::vector<double>& x) {
    return ensemble_average_entropy(phi,
                                    decomposition_from_isometry(rho, two_member_isometry(x[0], x[1])));
  };
  double best2 = std::numeric_limits<double>::infinity();
  std::vector<double> arg2{0.0, 0.0};
  double dtheta = (pi / 2) / (points - 1);
  double dphi = 2 * pi / points;
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      double val = obj2({i * dtheta, j * dphi});
      if (val < best2) {
        best2 = val;
        arg2 = {i * dtheta, j * dphi};
      }
    }
  arg2 = coordinate_refine(obj2, arg2, {dtheta, dphi}, &best2);

  auto obj3 = [&](const std::vector<double>& x) {
    return ensemble_average_entropy(
        phi, decomposition_from_isometry(rho, three_member_isometry(x[0], x[1], x[2], x[3])));
  };
  const int n3 = 12;
  double best3 = std::numeric_limits<double>::infinity();
  std::vector<double> arg3(4, 0.0);
  double d3 = (pi / 2) / (n3 - 1);
  double dchi = 2 * pi / n3;
  for (int ia = 0; ia < n3; ++ia)
    for (int ib = 0; ib < n3; ++ib)
      for (int it = 0; it < n3; ++it)
        for (int ic = 0; ic < n3; ++ic) {
          double val = obj3({ia * d3, ib * d3, it * d3, ic * dchi});
          if (val < best3) {
            best3 = val;
            arg3 = {ia * d3, ib * d3, it * d3, ic * dchi};
          }
        }
  arg3 = coordinate_refine(obj3, arg3, {d3, d3, d3, dchi}, &best3);

  if (best2 <= best3) {
    est.value = best2;
    est.best = decomposition_from_isometry(rho, two_member_isometry(arg2[0], arg2[1]));
    est.members = 2;
  } else {
    est.value = best3;
    est.best = decomposition_from_isometry(rho, three_member_isometry(arg3[0], arg3[1], arg3[2], arg3[3]));
    est.members = 3;
  }
  return est;
}

}  // namespace qcent
