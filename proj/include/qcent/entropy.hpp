// entropy.hpp -- entropies extended to subnormalized positive operators.
//
// Everything is in nats.  The extension used throughout is
//
//   H(rho) = Tr eta(rho) - eta(Tr rho),          eta(x) = -x ln x, eta(0) = 0,
//
// which is homogeneous of degree one, H(c rho) = c H(rho), and agrees with
// the usual von Neumann entropy on unit-trace operators.  The scalar
// counterpart for weight vectors is S({x_k}) = sum eta(x_k) - eta(sum x_k).
#pragma once

#include <optional>
#include <vector>

#include "qcent/linalg.hpp"

namespace qcent {

// eta(x) = -x ln x on [0, inf), eta(0) = 0.
double eta(double x);

// Binary entropy h2(p), domain [0,1], endpoints map to 0.
double binary_entropy(double p);

// g(x) = (1 + x) h2(x / (1 + x)) on [0, inf).  g(0) = 0, g(1) = 2 ln 2,
// nondecreasing and concave.
double g_function(double x);

// Nonnegative weights; entries in [-tol().psd, 0) are clamped to zero,
// anything lower throws NegativeWeight.
using WeightVector = std::vector<double>;

double extended_shannon_entropy(const WeightVector& w);

// ----------------------------------------------------------------------------
// DensityOperator: positive matrix with 0 < trace <= 1 + tol().tr.
//
// Subnormalized operators are first-class citizens here; several maps below
// produce them.  The eigensystem is computed on demand and cached; populate
// the cache before sharing an instance across threads.
// ----------------------------------------------------------------------------
class DensityOperator {
 public:
  // Validates Hermiticity, positivity (eigenvalues >= -tol().psd, small
  // negatives clamped) and the trace gate.  Throws InvalidState otherwise.
  static DensityOperator from_matrix(Matrix m);

  // Pure state |v><v| / <v|v> scaled by weight (default 1).
  static DensityOperator pure(const Vector& v, double weight = 1.0);

  // Diagonal operator in the standard basis.
  static DensityOperator diagonal(const RealVector& probs);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double trace() const { return trace_; }

  // Eigenvalues descending, negatives already clamped to zero.
  const EigenSystem& eigensystem() const;

  DensityOperator scaled(double c) const;

 private:
  explicit DensityOperator(Matrix m, double trace) : m_(std::move(m)), trace_(trace) {}

  Matrix m_;
  double trace_ = 0.0;
  mutable std::optional<EigenSystem> eig_;
};

// H(rho) via the extended formula; always >= 0 for trace <= 1.
double von_neumann_entropy(const DensityOperator& rho);

// Same, straight from a positive matrix (validates first).
double von_neumann_entropy(const Matrix& rho);

// (1/2) ||rho - sigma||_1.  Dimensions must match.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
double trace_distance(const Matrix& rho, const Matrix& sigma);

}  // namespace qcent
