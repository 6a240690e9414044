// channel.hpp -- quantum channels and operations in Kraus form.
//
// A map acts as Phi(rho) = sum_k V_k rho V_k^dagger.  kind=Channel demands
// sum V^dagger V = I within tol().tp; kind=Operation demands sum V^dagger V <= I.
// The environment is always indexed by the Kraus family: the complementary
// state of rho is the Gram matrix W_kj = Tr(V_k rho V_j^dagger), so its
// dimension equals the (canonicalized) number of Kraus operators.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcent/entropy.hpp"
#include "qcent/linalg.hpp"

namespace qcent {

enum class ChannelKind { Channel, Operation };

struct ValidationReport {
  ChannelKind kind;
  double deviation;  // channel: max |eig(sum V^dagger V - I)|; operation: max(eig) - 1 excess
  bool pass;
};

// Checks shapes and the normalization gate for raw Kraus data.
ValidationReport validate_kraus(const std::vector<Matrix>& ops, ChannelKind kind);

class KrausChannel {
 public:
  // Canonicalizes (drops all-zero operators), validates, throws
  // InvalidChannel when the declared kind's gate fails.
  static KrausChannel from_kraus(std::vector<Matrix> ops, ChannelKind kind = ChannelKind::Channel);

  int input_dim() const { return in_; }
  int output_dim() const { return out_; }
  int kraus_count() const { return static_cast<int>(ops_.size()); }
  ChannelKind kind() const { return kind_; }
  const std::vector<Matrix>& kraus() const { return ops_; }

  ValidationReport validate() const { return validate_kraus(ops_, kind_); }

 private:
  KrausChannel(std::vector<Matrix> ops, ChannelKind kind, int in, int out)
      : ops_(std::move(ops)), kind_(kind), in_(in), out_(out) {}

  std::vector<Matrix> ops_;
  ChannelKind kind_;
  int in_, out_;
};

// Phi(rho); raw-matrix overload does not revalidate the input.
Matrix apply(const KrausChannel& phi, const Matrix& rho);
DensityOperator apply(const KrausChannel& phi, const DensityOperator& rho);

// H(Phi(rho)); the extended entropy, so subnormalized outputs are fine.
double output_entropy(const KrausChannel& phi, const DensityOperator& rho);

// W_kj = Tr(V_k rho V_j^dagger), a state on the environment.
DensityOperator complementary_state(const KrausChannel& phi, const DensityOperator& rho);

// H of the complementary state (entropy exchange).
double entropy_exchange(const KrausChannel& phi, const DensityOperator& rho);

// outer after inner; Kraus family {W_j V_k}, j-major order.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

// Kraus family {V_k (x) W_j}, k-major order.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

// Rank of the Choi matrix (eigenvalues above tol().rank relative cut);
// equals the minimal Kraus count.
int choi_rank(const KrausChannel& phi);

// Purification of a unit-trace rho on the doubled space: the Schmidt vector
// sum_i sqrt(lambda_i) e_i (x) |i>, eigenbasis in descending order.
Vector purify(const DensityOperator& rho);

// ----------------------------------------------------------------------------
// Stock constructions.
// ----------------------------------------------------------------------------

KrausChannel identity_channel(int dim);

// Full pinching to the standard basis: {|k><k|}.
KrausChannel dephasing_channel(int dim);

// rho -> (1-p) rho + p Tr(rho) |0><0|.  Output rank <= 2 on pure inputs,
// so ln 2 is an analytic ceiling for its pure-state output entropy.
KrausChannel mix_with_ground_channel(int dim, double p);

// rho -> Tr(rho) I/dim.
KrausChannel depolarizing_channel(int dim);

// rho -> Tr(rho) sigma.
KrausChannel depolarize_to(const DensityOperator& sigma);

// Pinching family with c_1 = 1 and c_k = alpha / ln k for k >= 2, truncated
// to k <= levels; rank-one blocks P_k = |e_k><e_k| on basis index k-1 and
// V_1 = sqrt(I - sum_{k>=2} c_k P_k).
KrausChannel pinching_family_channel(double alpha, int levels);

// Partial trace over the second factor as a channel on dim_a * dim_b.
KrausChannel trace_out_second_channel(int dim_a, int dim_b);

// ----------------------------------------------------------------------------
// Classification: a diagnosis from structural descriptors, not a proof.
// ----------------------------------------------------------------------------

enum class FamilyKind {
  FiniteDimOutput,
  FiniteChoiRank,
  PinchingFamily,
  MixtureWithPure,
  ExplicitTruncated,
};

struct ChannelFamily {
  FamilyKind kind;
  double alpha = 0.0;       // PinchingFamily
  double p = 0.0;           // MixtureWithPure
  int dim = 0;              // declared/truncation dimension where relevant
  std::optional<KrausChannel> concrete;  // ExplicitTruncated
};

enum class ChannelClass { ClassA, ClassB, ClassC, NotPFE, Inconclusive };

const char* to_string(ChannelClass c);

struct ClassDiagnosis {
  ChannelClass verdict = ChannelClass::Inconclusive;
  std::string rule;  // the analytic rule that fired, or the probe summary
  std::vector<std::pair<std::string, double>> evidence;
};

// Rules: finite output dimension -> ClassA; finite Choi rank -> ClassB;
// proper mixture with a point channel -> ClassC.  Families without a rule
// get a numeric probe (output / complementary entropies on Gibbs inputs of
// growing energy) and come back Inconclusive with the probe as evidence.
ClassDiagnosis classify(const ChannelFamily& family);

}  // namespace qcent
