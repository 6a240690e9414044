#include "qcent/linalg.hpp"

#include <algorithm>

#include "qcent/errors.hpp"
#include "qcent/tolerances.hpp"

namespace qcent {

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return (m - m.adjoint()).cwiseAbs().maxCoeff();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return false;
  double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  return hermiticity_defect(m) <= tol().herm * scale;
}

EigenSystem hermitian_eigendecomposition(const Matrix& m) {
  if (m.rows() != m.cols() || m.size() == 0)
    throw Error(ErrorKind::DimensionMismatch, "eigendecomposition needs a nonempty square matrix");
  if (!is_hermitian(m))
    throw Error(ErrorKind::NonHermitian, "matrix is not Hermitian within tolerance");

  // Symmetrize first so the solver sees an exactly Hermitian input; the
  // defect is already certified small.
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NoConvergence, "eigensolver did not converge");

  const int n = static_cast<int>(m.rows());
  EigenSystem out;
  out.values = RealVector(n);
  out.vectors = Matrix(n, n);
  // Solver returns ascending order; flip to descending.
  for (int i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace_second(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "partial trace dims do not factor the matrix");
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      for (int k = 0; k < dim_b; ++k)
        out(i, j) += m(i * dim_b + k, j * dim_b + k);
  return out;
}

Matrix partial_trace_first(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "partial trace dims do not factor the matrix");
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int k = 0; k < dim_b; ++k)
    for (int l = 0; l < dim_b; ++l)
      for (int i = 0; i < dim_a; ++i)
        out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

}  // namespace qcent
