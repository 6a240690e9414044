#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qcent/entropy.hpp"
#include "qcent/linalg.hpp"

using namespace qcent;
using test::mat2;

TEST_CASE("eta vanishes at 0 and 1 and peaks at 1/e") {
  CHECK(eta(0.0) == 0.0);
  CHECK(eta(1.0) == 0.0);
  CHECK(eta(1.0 / std::exp(1.0)) == doctest::Approx(1.0 / std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("binary entropy anchors") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // eta(1/4) + eta(3/4)
  CHECK(binary_entropy(0.25) == doctest::Approx(0.5623351446188083).epsilon(1e-15));
  CHECK(binary_entropy(0.3) == binary_entropy(0.7));
}

TEST_CASE("g correction term anchors") {
  CHECK(g_function(0.0) == 0.0);
  // (1 + x) ln(1 + x) - x ln x
  CHECK(g_function(0.5) == doctest::Approx(0.9547712524422192).epsilon(1e-15));
  CHECK(g_function(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  // g is increasing
  CHECK(g_function(0.2) < g_function(0.4));
}

TEST_CASE("extended weight entropy handles subnormalized and supernormalized input") {
  // sum eta(x_k) - eta(sum x_k)
  CHECK(extended_shannon_entropy({0.2, 0.5}) ==
        doctest::Approx(0.41878871200968004).epsilon(1e-14));
  CHECK(extended_shannon_entropy({1.0}) == 0.0);
  CHECK(extended_shannon_entropy({0.25, 0.25, 0.25, 0.25}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-14));
  // homogeneity: S(c x) = c S(x)
  CHECK(extended_shannon_entropy({2.0, 2.0}) ==
        doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(test::thrown_kind([] { extended_shannon_entropy({0.3, -0.1}); }) ==
        ErrorKind::NegativeWeight);
}

TEST_CASE("pure states have zero entropy at any weight") {
  Vector v(3);
  v << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0);
  CHECK(von_neumann_entropy(DensityOperator::pure(v)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(von_neumann_entropy(DensityOperator::pure(v, 0.7))) < 1e-12);
}

TEST_CASE("maximally mixed state reaches ln d") {
  for (int d : {2, 3, 5, 8}) {
    RealVector p = RealVector::Constant(d, 1.0 / d);
    CHECK(von_neumann_entropy(DensityOperator::diagonal(p)) ==
          doctest::Approx(std::log(double(d))).epsilon(1e-13));
  }
}

TEST_CASE("diagonal states match the weight entropy, including subnormalized") {
  RealVector p(2);
  p << 0.3, 0.2;
  CHECK(von_neumann_entropy(DensityOperator::diagonal(p)) ==
        doctest::Approx(0.3365058335046283).epsilon(1e-14));
}

TEST_CASE("entropy is homogeneous under scaling") {
  RealVector p(3);
  p << 0.5, 0.3, 0.2;
  DensityOperator rho = DensityOperator::diagonal(p);
  double h = von_neumann_entropy(rho);
  CHECK(von_neumann_entropy(rho.scaled(0.25)) == doctest::Approx(0.25 * h).epsilon(1e-12));
}

TEST_CASE("entropy ignores the basis") {
  // Rotating a diagonal state must not change its spectrum.
  Matrix u = mat2(std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3));
  Matrix rho = u * mat2(0.8, 0.0, 0.0, 0.2) * u.adjoint();
  CHECK(von_neumann_entropy(rho) ==
        doctest::Approx(binary_entropy(0.2)).epsilon(1e-12));
}

TEST_CASE("state factories reject invalid input") {
  CHECK(test::thrown_kind([] {
          DensityOperator::from_matrix(test::mat2(0.5, 0.2, 0.3, 0.5));
        }) == ErrorKind::InvalidState);
  CHECK(test::thrown_kind([] {
          DensityOperator::from_matrix(test::mat2(1.2, 0.0, 0.0, -0.2));
        }) == ErrorKind::InvalidState);
  RealVector over(2);
  over << 0.9, 0.9;  // trace 1.8 > 1
  CHECK(test::thrown_kind([&] { DensityOperator::diagonal(over); }) ==
        ErrorKind::InvalidState);
  Vector z = Vector::Zero(2);
  CHECK(test::thrown_kind([&] { DensityOperator::pure(z); }) == ErrorKind::InvalidState);
}

TEST_CASE("two state mixtures obey the concavity window") {
  RealVector pa(2), pb(2);
  pa << 0.9, 0.1;
  pb << 0.4, 0.6;
  DensityOperator a = DensityOperator::diagonal(pa);
  DensityOperator b = DensityOperator::diagonal(pb);
  for (double p : {0.1, 0.35, 0.5, 0.8}) {
    Matrix mix = p * a.matrix() + (1.0 - p) * b.matrix();
    double gap = von_neumann_entropy(mix) -
                 (p * von_neumann_entropy(a) + (1.0 - p) * von_neumann_entropy(b));
    CHECK(gap >= -1e-12);
    CHECK(gap <= binary_entropy(p) + 1e-12);
  }
}

TEST_CASE("trace distance anchors and symmetry") {
  RealVector e0(2), e1(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  DensityOperator a = DensityOperator::diagonal(e0);
  DensityOperator b = DensityOperator::diagonal(e1);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0).epsilon(1e-14));
  RealVector m(2);
  m << 0.75, 0.25;
  DensityOperator c = DensityOperator::diagonal(m);
  CHECK(trace_distance(a, c) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(trace_distance(a, c) == doctest::Approx(trace_distance(c, a)).epsilon(1e-14));
}
