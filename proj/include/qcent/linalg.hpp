// linalg.hpp -- dense complex matrix helpers shared by the whole library.
//
// Conventions: column vectors, row-major reasoning in comments, eigenvalues
// always reported in descending order.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qcent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct EigenSystem {
  RealVector values;  // descending
  Matrix vectors;     // columns, same order as values
};

// Max-entry deviation from Hermiticity, |M - M^dagger|_max.
double hermiticity_defect(const Matrix& m);

bool is_hermitian(const Matrix& m);

// Full eigensystem of a Hermitian matrix.  Throws NonHermitian when the
// defect exceeds tol().herm * |M|_max, NoConvergence if the solver gives up.
// Post: vectors unitary, values descending, U diag(values) U^dagger
// reconstructs M within tol().recon Frobenius-relative.
EigenSystem hermitian_eigendecomposition(const Matrix& m);

// Kronecker product, row-of-a major: (a (x) b)[i*rb+k, j*cb+l] = a(i,j) b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

// Trace out the second factor of a dim_a * dim_b system.
Matrix partial_trace_second(const Matrix& m, int dim_a, int dim_b);

// Trace out the first factor.
Matrix partial_trace_first(const Matrix& m, int dim_a, int dim_b);

Matrix identity(int dim);

}  // namespace qcent
