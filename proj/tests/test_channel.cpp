#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qcent/channel.hpp"
#include "qcent/entropy.hpp"
#include "qcent/linalg.hpp"

using namespace qcent;
using test::mat2;
using test::max_abs_diff;

namespace {

DensityOperator fixed_qubit() {
  return DensityOperator::from_matrix(
      mat2(0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3));
}

// Kraus pair {sqrt(0.7) I, sqrt(0.3) X}: a bit flip with probability 0.3.
KrausChannel bit_flip_03() {
  Matrix x = mat2(0.0, 1.0, 1.0, 0.0);
  std::vector<Matrix> ops = {std::sqrt(0.7) * identity(2), std::sqrt(0.3) * x};
  return KrausChannel::from_kraus(ops);
}

}  // namespace

TEST_CASE("identity channel is the identity map") {
  KrausChannel id = identity_channel(3);
  CHECK(id.kraus_count() == 1);
  CHECK(choi_rank(id) == 1);
  Matrix rho = Matrix::Zero(3, 3);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.2;
  rho(0, 2) = rho(2, 0) = 0.1;
  CHECK(max_abs_diff(qcent::apply(id, rho), rho) < 1e-15);
}

TEST_CASE("dephasing kills off-diagonal entries") {
  KrausChannel deph = dephasing_channel(2);
  Matrix out = qcent::apply(deph, fixed_qubit().matrix());
  CHECK(std::abs(out(0, 1)) < 1e-15);
  CHECK(out(0, 0).real() == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(choi_rank(deph) == 2);
}

TEST_CASE("ground-state mixing has the documented action and entropy") {
  KrausChannel mix = mix_with_ground_channel(2, 0.3);
  RealVector e1(2);
  e1 << 0.0, 1.0;
  DensityOperator rho = DensityOperator::diagonal(e1);  // |1><1|
  Matrix out = qcent::apply(mix, rho.matrix());
  CHECK(out(0, 0).real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(out(1, 1).real() == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(output_entropy(mix, rho) == doctest::Approx(0.6108643020548935).epsilon(1e-12));
  CHECK(choi_rank(mix) == 3);
}

TEST_CASE("depolarizing sends everything to the flat state") {
  KrausChannel dep = depolarizing_channel(2);
  DensityOperator rho = fixed_qubit();
  Matrix out = qcent::apply(dep, rho.matrix());
  CHECK(max_abs_diff(out, 0.5 * identity(2)) < 1e-14);
  CHECK(output_entropy(dep, rho) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("complementary state of a diagonal mixing pair is diagonal in kraus index") {
  KrausChannel flip = bit_flip_03();
  RealVector e0(2);
  e0 << 1.0, 0.0;
  DensityOperator rho = DensityOperator::diagonal(e0);  // |0><0|
  DensityOperator w = complementary_state(flip, rho);
  REQUIRE(w.dim() == 2);
  CHECK(w.matrix()(0, 0).real() == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(w.matrix()(1, 1).real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::abs(w.matrix()(0, 1)) < 1e-14);
  CHECK(entropy_exchange(flip, rho) ==
        doctest::Approx(0.6108643020548935).epsilon(1e-12));
  // Pure input: output entropy and entropy exchange coincide.
  CHECK(output_entropy(flip, rho) ==
        doctest::Approx(entropy_exchange(flip, rho)).epsilon(1e-12));
}

TEST_CASE("composition acts like sequential application") {
  KrausChannel inner = mix_with_ground_channel(2, 0.3);
  KrausChannel outer = dephasing_channel(2);
  KrausChannel both = compose(outer, inner);
  // Zero products are canonicalized away, so 2 x 3 collapses to 4 here.
  CHECK(both.kraus_count() == 4);
  Matrix rho = fixed_qubit().matrix();
  CHECK(max_abs_diff(qcent::apply(both, rho), qcent::apply(outer, qcent::apply(inner, rho))) < 1e-14);
}

TEST_CASE("tensor products act factorwise") {
  KrausChannel id = identity_channel(2);
  KrausChannel deph = dephasing_channel(2);
  KrausChannel prod = tensor(id, deph);
  CHECK(prod.input_dim() == 4);
  Matrix a = fixed_qubit().matrix();
  Matrix b = mat2(0.6, 0.2, 0.2, 0.4);
  CHECK(max_abs_diff(qcent::apply(prod, kron(a, b)), kron(a, qcent::apply(deph, b))) < 1e-14);
  // Choi rank multiplies.
  CHECK(choi_rank(prod) == choi_rank(id) * choi_rank(deph));
}

TEST_CASE("choi rank ignores redundant kraus repetitions") {
  // Splitting one operator into two parallel copies must not raise the rank.
  Matrix x = mat2(0.0, 1.0, 1.0, 0.0);
  std::vector<Matrix> ops = {std::sqrt(0.7) * identity(2), std::sqrt(0.15) * x,
                             std::sqrt(0.15) * x};
  KrausChannel padded = KrausChannel::from_kraus(ops);
  CHECK(padded.kraus_count() == 3);
  CHECK(choi_rank(padded) == 2);
}

TEST_CASE("purification traces back to the state") {
  RealVector p(3);
  p << 0.5, 0.3, 0.2;
  DensityOperator rho = DensityOperator::diagonal(p);
  Vector psi = purify(rho);
  REQUIRE(psi.size() == 9);
  Matrix proj = psi * psi.adjoint();
  CHECK(max_abs_diff(partial_trace_second(proj, 3, 3), rho.matrix()) < 1e-12);
}

TEST_CASE("tracing out the second factor recovers the first") {
  KrausChannel tr2 = trace_out_second_channel(2, 3);
  CHECK(tr2.input_dim() == 6);
  CHECK(tr2.output_dim() == 2);
  Matrix a = fixed_qubit().matrix();
  Matrix b = Matrix::Zero(3, 3);
  b(0, 0) = 0.2;
  b(1, 1) = 0.5;
  b(2, 2) = 0.3;
  CHECK(max_abs_diff(qcent::apply(tr2, kron(a, b)), a) < 1e-14);
}

TEST_CASE("kraus validation separates channels from operations") {
  std::vector<Matrix> half = {0.5 * identity(2)};  // sum V*V = I/4
  ValidationReport rep = validate_kraus(half, ChannelKind::Operation);
  CHECK(rep.pass);
  CHECK(test::thrown_kind([&] {
          KrausChannel::from_kraus(half, ChannelKind::Channel);
        }) == ErrorKind::InvalidChannel);

  std::vector<Matrix> over = {1.5 * identity(2)};  // sum V*V = 2.25 I
  CHECK_FALSE(validate_kraus(over, ChannelKind::Operation).pass);
  CHECK(validate_kraus(over, ChannelKind::Operation).deviation ==
        doctest::Approx(1.25).epsilon(1e-12));

  std::vector<Matrix> mismatched = {identity(2), identity(3)};
  CHECK(test::thrown_kind([&] { KrausChannel::from_kraus(mismatched); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("pinching family is trace preserving with one operator per level") {
  KrausChannel pinch = pinching_family_channel(0.5, 16);
  CHECK(pinch.kraus_count() == 16);
  CHECK(pinch.validate().pass);
  CHECK(test::thrown_kind([] { pinching_family_channel(0.8, 8); }) ==
        ErrorKind::OutOfRange);  // alpha beyond ln 2
  CHECK(test::thrown_kind([] { pinching_family_channel(0.5, 1); }) ==
        ErrorKind::OutOfRange);
}

TEST_CASE("classification rules fire on declared structure") {
  ChannelFamily finite_out{FamilyKind::FiniteDimOutput, 0.0, 0.0, 4, std::nullopt};
  CHECK(classify(finite_out).verdict == ChannelClass::ClassA);

  ChannelFamily finite_choi{FamilyKind::FiniteChoiRank, 0.0, 0.0, 1, std::nullopt};
  CHECK(classify(finite_choi).verdict == ChannelClass::ClassB);

  ChannelFamily mixture{FamilyKind::MixtureWithPure, 0.0, 0.3, 2, std::nullopt};
  ClassDiagnosis diag = classify(mixture);
  CHECK(diag.verdict == ChannelClass::ClassC);
  CHECK_FALSE(diag.rule.empty());

  ChannelFamily pinch{FamilyKind::PinchingFamily, 0.5, 0.0, 16, std::nullopt};
  ClassDiagnosis probe = classify(pinch);
  CHECK(probe.verdict == ChannelClass::Inconclusive);
  CHECK_FALSE(probe.evidence.empty());

  CHECK(std::string(to_string(ChannelClass::ClassA)) == "class_A");
  CHECK(std::string(to_string(ChannelClass::Inconclusive)) == "inconclusive");
}
