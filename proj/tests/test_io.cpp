#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "qcent/entropy.hpp"
#include "qcent/io.hpp"

using namespace qcent;

TEST_CASE("state forms parse to the expected operators") {
  DensityOperator diag = parse_state(R"({"version":"v1","diagonal":[0.25,0.75]})");
  CHECK(diag.dim() == 2);
  CHECK(von_neumann_entropy(diag) == doctest::Approx(0.5623351446188083).epsilon(1e-12));

  DensityOperator full = parse_state(
      R"({"version":"v1","type":"state",
          "matrix":[[0.7,[0.1,0.2]],[[0.1,-0.2],0.3]]})");
  CHECK(full.matrix()(0, 1) == Complex(0.1, 0.2));
  CHECK(full.matrix()(1, 0) == Complex(0.1, -0.2));
  CHECK(full.trace() == doctest::Approx(1.0).epsilon(1e-14));

  DensityOperator weighted = parse_state(
      R"({"version":"v1","pure":[0.6,[0.0,0.8]],"weight":0.5})");
  CHECK(weighted.trace() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(von_neumann_entropy(weighted)) < 1e-12);
}

TEST_CASE("state parsing rejects malformed documents") {
  CHECK(test::thrown_kind([] { parse_state("{"); }) == ErrorKind::ParseError);
  CHECK(test::thrown_kind([] { parse_state(R"({"diagonal":[1.0]})"); }) ==
        ErrorKind::ParseError);  // missing version
  CHECK(test::thrown_kind([] {
          parse_state(R"({"version":"v2","diagonal":[1.0]})");
        }) == ErrorKind::ParseError);
  CHECK(test::thrown_kind([] {
          parse_state(R"({"version":"v1","type":"channel","diagonal":[1.0]})");
        }) == ErrorKind::ParseError);  // wrong type tag
  CHECK(test::thrown_kind([] { parse_state(R"({"version":"v1"})"); }) ==
        ErrorKind::ParseError);  // no recognized form
  CHECK(test::thrown_kind([] {
          parse_state(R"({"version":"v1","matrix":[[1.0,0.0],[0.5]]})");
        }) == ErrorKind::ParseError);  // ragged rows
  CHECK(test::thrown_kind([] {
          parse_state(R"({"version":"v1","matrix":[[1.0],[0.0]]})");
        }) == ErrorKind::InvalidState);  // parses fine, rejected as non-square
  // Semantic violations surface as the domain error, not ParseError.
  CHECK(test::thrown_kind([] {
          parse_state(R"({"version":"v1","diagonal":[0.9,0.9]})");
        }) == ErrorKind::InvalidState);
}

TEST_CASE("kraus channels parse with optional dimension cross-checks") {
  LoadedChannel deph = parse_channel(
      R"({"version":"v1","type":"channel",
          "kraus":[[[1,0],[0,0]],[[0,0],[0,1]]]})");
  CHECK(deph.channel.kraus_count() == 2);
  CHECK(deph.description == "kraus");
  CHECK_FALSE(deph.family.has_value());
  CHECK_FALSE(deph.hp_ceiling.has_value());

  CHECK(test::thrown_kind([] {
          parse_channel(R"({"version":"v1","input_dim":3,
                            "kraus":[[[1,0],[0,1]]]})");
        }) == ErrorKind::ParseError);

  LoadedChannel op = parse_channel(
      R"({"version":"v1","kind":"operation","kraus":[[[0.5,0],[0,0.5]]]})");
  CHECK(op.channel.kind() == ChannelKind::Operation);
  CHECK(test::thrown_kind([] {
          parse_channel(R"({"version":"v1","kind":"bogus","kraus":[[[1]]]})");
        }) == ErrorKind::ParseError);
}

TEST_CASE("generator channels carry their family and entropy ceiling") {
  LoadedChannel id = parse_channel(
      R"({"version":"v1","generator":"identity","params":{"dim":3}})");
  CHECK(id.description == "identity");
  CHECK(id.channel.input_dim() == 3);
  REQUIRE(id.hp_ceiling.has_value());
  CHECK(*id.hp_ceiling == doctest::Approx(0.0));
  REQUIRE(id.family.has_value());
  CHECK(id.family->kind == FamilyKind::FiniteChoiRank);

  LoadedChannel mix = parse_channel(
      R"({"version":"v1","generator":"mix_with_ground","params":{"dim":2,"p":0.3}})");
  REQUIRE(mix.hp_ceiling.has_value());
  CHECK(*mix.hp_ceiling == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(mix.family->kind == FamilyKind::MixtureWithPure);
  CHECK(mix.family->p == doctest::Approx(0.3));

  LoadedChannel deph = parse_channel(
      R"({"version":"v1","generator":"dephasing","params":{"dim":4}})");
  CHECK(*deph.hp_ceiling == doctest::Approx(std::log(4.0)).epsilon(1e-14));

  // The historical alias normalizes to the canonical name.
  LoadedChannel pinch = parse_channel(
      R"({"version":"v1","generator":"example1_pinching",
          "params":{"alpha":0.5,"levels":8}})");
  CHECK(pinch.description == "pinching_family");
  CHECK(pinch.family->kind == FamilyKind::PinchingFamily);
  CHECK(pinch.family->alpha == doctest::Approx(0.5));
  CHECK_FALSE(pinch.hp_ceiling.has_value());

  CHECK(test::thrown_kind([] {
          parse_channel(R"({"version":"v1","generator":"nope","params":{}})");
        }) == ErrorKind::ParseError);
  CHECK(test::thrown_kind([] {
          parse_channel(R"({"version":"v1","generator":"identity","params":{}})");
        }) == ErrorKind::ParseError);  // dim missing
}

TEST_CASE("hamiltonian forms parse to spectra") {
  HamiltonianSpectrum ex = parse_hamiltonian(
      R"({"version":"v1","type":"hamiltonian","kind":"explicit",
          "levels":[0,1],"tail":"finite"})");
  CHECK(ex.kind == SpectrumKind::Explicit);
  REQUIRE(ex.levels.size() == 2);
  CHECK(ex.tail == TailModel::Finite);

  HamiltonianSpectrum geo = parse_hamiltonian(
      R"({"version":"v1","kind":"explicit","levels":[0,1,2],
          "tail":"geometric_gap","gap":0.5})");
  CHECK(geo.tail == TailModel::GeometricGap);
  CHECK(geo.gap == doctest::Approx(0.5));

  HamiltonianSpectrum osc = parse_hamiltonian(
      R"({"version":"v1","kind":"oscillator","hbar_omega":1.0,"cutoff":3.6})");
  CHECK(osc.kind == SpectrumKind::Oscillator);
  CHECK(generate_levels(osc).size() == 4);

  HamiltonianSpectrum two = parse_hamiltonian(
      R"({"version":"v1","kind":"oscillator","hbar_omega":[1.0,1.0],"cutoff":2.1})");
  CHECK(generate_levels(two).size() == 3);

  CHECK(test::thrown_kind([] {
          parse_hamiltonian(R"({"version":"v1","kind":"explicit"})");
        }) == ErrorKind::ParseError);
  CHECK(test::thrown_kind([] {
          parse_hamiltonian(R"({"version":"v1","kind":"rotor"})");
        }) == ErrorKind::ParseError);
}

TEST_CASE("files round trip through the loaders") {
  std::string path = "qcent_io_test_state.json";
  {
    std::ofstream out(path);
    out << R"({"version":"v1","diagonal":[0.5,0.5]})";
  }
  DensityOperator rho = load_state(path);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  std::remove(path.c_str());

  CHECK(test::thrown_kind([] { load_state("definitely_missing_file.json"); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("doubles format with full round-trip precision") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.25) == "-0.25");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("json writer emits deterministic compact documents") {
  JsonWriter w;
  w.begin_object();
  w.key("a").begin_array();
  w.value(1.5).value(true).value("x\"y\n");
  w.end_array();
  w.key("b").begin_object();
  w.key("c").value(2);
  w.end_object();
  w.end_object();
  CHECK(w.str() == R"({"a":[1.5,true,"x\"y\n"],"b":{"c":2}})");
}
