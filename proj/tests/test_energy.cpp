#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qcent/energy.hpp"

using namespace qcent;

namespace {

EnergyProfile two_level() {
  return EnergyProfile(HamiltonianSpectrum::explicit_levels({0.0, 1.0}, TailModel::Finite));
}

EnergyProfile unit_oscillator() {
  return EnergyProfile(HamiltonianSpectrum::oscillator({1.0}));
}

}  // namespace

TEST_CASE("two level gibbs anchors at E = 1/4") {
  EnergyProfile p = two_level();
  // exp(-lambda) = 1/3 puts the mean at 1/4
  CHECK(gibbs_parameter(p, 0.25) == doctest::Approx(std::log(3.0)).epsilon(1e-7));
  CHECK(partition_function(p, std::log(3.0)) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(F_H(p, 0.25) == doctest::Approx(0.5623351446188083).epsilon(1e-9));

  DensityOperator gamma = gibbs_state(p, 0.25);
  CHECK(gamma.matrix()(0, 0).real() == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(gamma.matrix()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("entropy curve plateaus at the flat state") {
  EnergyProfile p = two_level();
  CHECK(p.mean_sup() == doctest::Approx(0.5));
  CHECK(F_H(p, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(F_H(p, 0.9) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(F_H(p, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("degenerate ground floor lifts the curve at the bottom") {
  EnergyProfile p(HamiltonianSpectrum::explicit_levels({0.0, 0.0, 1.0}, TailModel::Finite));
  CHECK(p.ground_multiplicity() == 2);
  CHECK(F_H(p, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("unit oscillator gibbs anchors at E = 3/2") {
  EnergyProfile p = unit_oscillator();
  CHECK(p.ground_energy() == doctest::Approx(0.5));
  CHECK(p.level_count() == 49);  // default cutoff E0 + 48 w
  CHECK(gibbs_parameter(p, 1.5) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(F_H(p, 1.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-6));
  // Z(ln 2) = e^{-1/2 ln 2} / (1 - e^{-ln 2}) = sqrt(2) / (1/2)... with the
  // absolute-energy convention: e^{-lambda/2}/(1 - e^{-lambda}) = sqrt(2).
  CHECK(partition_function(p, std::log(2.0)) ==
        doctest::Approx(1.4142135623730951).epsilon(1e-9));
}

TEST_CASE("partition tail certificate refuses hot truncations") {
  EnergyProfile p = unit_oscillator();
  // At lambda = 1/4 the discarded tail beats the certificate.
  CHECK(test::thrown_kind([&] { partition_function(p, 0.25); }) ==
        ErrorKind::TailNotControlled);
  CHECK(test::thrown_kind([&] { partition_function(p, -0.1); }) ==
        ErrorKind::OutOfRange);

  EnergyProfile geo(HamiltonianSpectrum::explicit_levels({0.0, 1.0, 2.0},
                                                         TailModel::GeometricGap));
  // Inferred gap 1; at lambda = 1/2 the geometric remainder is huge.
  CHECK(test::thrown_kind([&] { partition_function(geo, 0.5); }) ==
        ErrorKind::TailNotControlled);
  CHECK(partition_function(geo, 50.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oscillator level enumeration honors the cutoff") {
  std::vector<double> two = generate_levels(HamiltonianSpectrum::oscillator({1.0, 1.0}, 2.1));
  REQUIRE(two.size() == 3);
  CHECK(two[0] == doctest::Approx(1.0));
  CHECK(two[1] == doctest::Approx(2.0));
  CHECK(two[2] == doctest::Approx(2.0));

  std::vector<double> one = generate_levels(HamiltonianSpectrum::oscillator({1.0}, 3.6));
  REQUIRE(one.size() == 4);
  CHECK(one[0] == doctest::Approx(0.5));
  CHECK(one[3] == doctest::Approx(3.5));
}

TEST_CASE("shifted curve agrees with the absolute curve") {
  EnergyProfile p = two_level();
  for (double e : {0.0, 0.1, 0.25, 0.4}) {
    CHECK(F_bar(p, e) == doctest::Approx(F_H(p, e + p.ground_energy())).epsilon(1e-12));
  }
  CHECK(test::thrown_kind([&] { F_bar(p, -0.5); }) == ErrorKind::OutOfRange);
}

TEST_CASE("envelope dominates and flattens the plateaued curve") {
  EnergyProfile p = two_level();
  // Past the plateau onset the envelope freezes at ln 2.
  CHECK(F_hat_star(p, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(F_hat_star(p, 0.0) == doctest::Approx(0.0));
  for (double e : {0.05, 0.2, 0.35}) {
    CHECK(F_hat_star(p, e) >= F_bar(p, e) - 1e-10);
  }
}

TEST_CASE("oscillator envelope handle inverts to the documented gamma") {
  FhatHandle h = fhat_oscillator_handle({1.0});
  CHECK(h.value(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(base_dim(h) == 3);  // ln 2 < 1 < ln 3
  // ln(E + 1) + 1 = ln 3  =>  E = 3/e - 1
  CHECK(gamma_of_d(h, 3) == doctest::Approx(0.103638323514327).epsilon(1e-6));
  CHECK(test::thrown_kind([&] { gamma_of_d(h, 2); }) == ErrorKind::BelowD0);
}

TEST_CASE("closed form two mode envelope value at zero") {
  CHECK(oscillator_F_bar({1.0, 1.0}, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(oscillator_F_bar({1.0, 2.0}, 0.0) ==
        doctest::Approx(2.1177830356563834).epsilon(1e-12));
  CHECK(test::thrown_kind([] { oscillator_F_bar({1.0}, -1.0); }) ==
        ErrorKind::OutOfRange);
  CHECK(test::thrown_kind([] { oscillator_F_bar({-1.0}, 1.0); }) ==
        ErrorKind::OutOfRange);
}

TEST_CASE("starred envelope handle starts at dimension two") {
  auto p = std::make_shared<EnergyProfile>(HamiltonianSpectrum::oscillator({1.0}));
  FhatHandle h = fhat_star_handle(p);
  CHECK(h.value(0.0) == doctest::Approx(0.0));
  CHECK(base_dim(h) == 2);
  CHECK(h.increasing);
  CHECK(h.ratio_nonincreasing);
}

TEST_CASE("tabulated handle interpolates and audits its nodes") {
  FhatHandle h = fhat_tabulated({{0.0, 0.0}, {1.0, 1.0}, {4.0, 2.0}});
  CHECK(h.value(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.value(2.5) == doctest::Approx(1.5).epsilon(1e-12));
  // sqrt(E)-proportional extension beyond the last node
  CHECK(h.value(16.0) == doctest::Approx(4.0).epsilon(1e-12));
  // Ratio increase between nodes is rejected at construction.
  CHECK(test::thrown_kind([] { fhat_tabulated({{1.0, 1.0}, {4.0, 3.0}}); }) ==
        ErrorKind::OutOfRange);
}

TEST_CASE("pair counting ratio on a fixed spectrum") {
  HamiltonianSpectrum s = HamiltonianSpectrum::explicit_levels({1.0, 2.0}, TailModel::Finite);
  // Pairs with E_k + E_j <= 3: (1,1), (1,2), (2,1).  up = 1+1+4, dn = 1+2+2.
  CHECK(bd_ratio(s, 3.0) == doctest::Approx(6.0 / 5.0).epsilon(1e-14));

  HamiltonianSpectrum zero = HamiltonianSpectrum::explicit_levels({0.0, 1.0}, TailModel::Finite);
  CHECK(test::thrown_kind([&] { bd_ratio(zero, 1.0); }) == ErrorKind::EmptyIndexSet);
}

TEST_CASE("pair counting ratio approaches the mode limit") {
  CHECK(bd_ratio(HamiltonianSpectrum::oscillator({1.0}), 40.0) ==
        doctest::Approx(2.0).epsilon(0.02));
  CHECK(bd_ratio(HamiltonianSpectrum::oscillator({1.0, 1.0}), 40.0) ==
        doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("spectrum constructors validate their input") {
  CHECK(test::thrown_kind([] {
          HamiltonianSpectrum::explicit_levels({}, TailModel::Finite);
        }) == ErrorKind::OutOfRange);
  CHECK(test::thrown_kind([] { HamiltonianSpectrum::oscillator({}); }) ==
        ErrorKind::OutOfRange);
  CHECK(test::thrown_kind([] { HamiltonianSpectrum::oscillator({0.0}); }) ==
        ErrorKind::OutOfRange);
  EnergyProfile p = two_level();
  CHECK(test::thrown_kind([&] { gibbs_parameter(p, -1.0); }) == ErrorKind::OutOfRange);
}
