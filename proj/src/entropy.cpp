#include "qcent/entropy.hpp"

#include <cmath>

#include "qcent/errors.hpp"
#include "qcent/tolerances.hpp"

namespace qcent {

double eta(double x) {
  if (x < 0) throw Error(ErrorKind::OutOfRange, "eta needs x >= 0");
  if (x == 0.0) return 0.0;
  return -x * std::log(x);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw Error(ErrorKind::OutOfRange, "binary_entropy needs p in [0,1]");
  return eta(p) + eta(1.0 - p);
}

double g_function(double x) {
  if (x < 0.0) throw Error(ErrorKind::OutOfRange, "g_function needs x >= 0");
  if (x == 0.0) return 0.0;
  // (1+x) h2(x/(1+x)) = (1+x) ln(1+x) - x ln x
  return (1.0 + x) * std::log1p(x) - x * std::log(x);
}

namespace {

// Shared clamp: weights and eigenvalues tolerate a -tol().psd dip.
double clamp_weight(double x, const char* what) {
  if (x < -tol().psd) throw Error(ErrorKind::NegativeWeight, what);
  return x < 0.0 ? 0.0 : x;
}

}  // namespace

double extended_shannon_entropy(const WeightVector& w) {
  double sum = 0.0;
  double acc = 0.0;
  for (double x : w) {
    double c = clamp_weight(x, "weight below -psd tolerance");
    sum += c;
    acc += eta(c);
  }
  return acc - eta(sum);
}

// ----------------------------------------------------------------------------
// DensityOperator
// ----------------------------------------------------------------------------

DensityOperator DensityOperator::from_matrix(Matrix m) {
  if (m.rows() != m.cols() || m.size() == 0)
    throw Error(ErrorKind::InvalidState, "state matrix must be square and nonempty");
  if (!is_hermitian(m))
    throw Error(ErrorKind::InvalidState, "state matrix is not Hermitian within tolerance");

  EigenSystem eig = hermitian_eigendecomposition(m);
  for (int i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) < -tol().psd)
      throw Error(ErrorKind::InvalidState, "state has an eigenvalue below -psd tolerance");
    if (eig.values(i) < 0.0) eig.values(i) = 0.0;
  }
  double trace = eig.values.sum();
  if (!(trace > 0.0))
    throw Error(ErrorKind::InvalidState, "state has nonpositive trace");
  if (trace > 1.0 + tol().tr)
    throw Error(ErrorKind::InvalidState, "state trace exceeds 1 beyond tolerance");

  DensityOperator rho(std::move(m), trace);
  rho.eig_ = std::move(eig);
  return rho;
}

DensityOperator DensityOperator::pure(const Vector& v, double weight) {
  double n2 = v.squaredNorm();
  if (!(n2 > 0.0)) throw Error(ErrorKind::InvalidState, "pure state needs a nonzero vector");
  if (weight <= 0.0 || weight > 1.0 + tol().tr)
    throw Error(ErrorKind::InvalidState, "pure state weight must lie in (0, 1]");
  Matrix m = (weight / n2) * (v * v.adjoint());
  return from_matrix(std::move(m));
}

DensityOperator DensityOperator::diagonal(const RealVector& probs) {
  Matrix m = Matrix::Zero(probs.size(), probs.size());
  for (int i = 0; i < probs.size(); ++i) m(i, i) = probs(i);
  return from_matrix(std::move(m));
}

const EigenSystem& DensityOperator::eigensystem() const {
  if (!eig_) {
    EigenSystem eig = hermitian_eigendecomposition(m_);
    for (int i = 0; i < eig.values.size(); ++i)
      if (eig.values(i) < 0.0) eig.values(i) = 0.0;
    eig_ = std::move(eig);
  }
  return *eig_;
}

DensityOperator DensityOperator::scaled(double c) const {
  if (c <= 0.0) throw Error(ErrorKind::OutOfRange, "scale factor must be positive");
  return from_matrix(c * m_);
}

// ----------------------------------------------------------------------------

double von_neumann_entropy(const DensityOperator& rho) {
  const EigenSystem& eig = rho.eigensystem();
  double acc = 0.0;
  for (int i = 0; i < eig.values.size(); ++i) acc += eta(eig.values(i));
  return acc - eta(rho.trace());
}

double von_neumann_entropy(const Matrix& rho) {
  return von_neumann_entropy(DensityOperator::from_matrix(rho));
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw Error(ErrorKind::DimensionMismatch, "trace_distance needs equal dimensions");
  EigenSystem eig = hermitian_eigendecomposition(rho - sigma);
  return 0.5 * eig.values.cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

}  // namespace qcent
