// bounds.hpp -- entropy continuity bounds for channel outputs.
//
// The centerpiece bounds |H_Phi(rho) - H_Phi(sigma)| for states with mean
// energy <= E and trace distance <= eps by
//
//   eps (1+4t) [ F_hat(Ebar/(eps t)^2) + Delta ] + 2 g(eps t) + g(eps (1+2t)),
//
// Delta = Hp_max + 1/d0 + ln 2, valid for any t in (0, T],
// T = (1/eps) min{ 1, sqrt(Ebar / gamma(d0)) }.  Hp_max must be a certified
// UPPER bound on the channel's pure-state output entropy; a sampled lower
// estimate in its place silently voids the bound.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcent/channel.hpp"
#include "qcent/energy.hpp"

namespace qcent {

// eps ln(d-1) + h2(eps), the sharp d-dimensional bound; needs d >= 2 and
// eps in [0, 1 - 1/d].
double audenaert_bound(int dim, double eps);

// eps * range + g(eps): the generic continuity bound when the output
// entropy spread is capped by `range` (ln d for a d-dimensional output).
double afw_bound(double range, double eps);

struct BoundTerms {
  double main;     // eps (1+4t) (F_hat + Delta)
  double g_small;  // 2 g(eps t)
  double g_large;  // g(eps (1+2t))
};

// Audit trail for the envelope the bound consumed.
struct MonotoneFlags {
  bool fhat_increasing = false;
  bool fhat_ratio_nonincreasing = false;
};

struct BoundResult {
  double value = 0.0;
  double t_used = 0.0;
  double t_max = 0.0;  // largest admissible t for this request
  BoundTerms terms{};
  MonotoneFlags flags{};
};

struct BoundRequest {
  double eps = 0.0;   // trace-distance radius, (0, 1]
  double ebar = 0.0;  // energy ceiling above the ground, Ebar = E - E0 > 0
  double hp_max = 0.0;
  FhatHandle fhat;
  std::optional<double> t;  // empty: minimized over the admissible range
  std::optional<int> d0;    // default: base_dim(fhat)
};

// Largest admissible t.  gamma(d0) comes from inverting the envelope.
double admissible_t_max(const BoundRequest& request);

// Bound at the requested t (TOutOfRange when t misses (1e-6, T]), or at the
// optimized t when none was given.
BoundResult theorem2_bound(const BoundRequest& request);

// Explicit minimization: 64-point log grid over the admissible range, then
// golden-section refinement around the best grid point.
BoundResult optimize_t(const BoundRequest& request);

// Oscillator form: envelope = oscillator_F_bar, Delta* = Hp + e^-l + ln 2,
// T* = (1/eps) min{1, sqrt(Ebar/E0)}.
BoundResult corollary5_bound(const std::vector<double>& omega, double eps, double ebar,
                             double hp_max, std::optional<double> t = std::nullopt);

// ----------------------------------------------------------------------------
// Pure-state output entropy: sampled floor, certified ceiling.
// ----------------------------------------------------------------------------

struct HpMaxEstimate {
  double lower = 0.0;  // achieved by `witness`
  double upper = 0.0;  // certified; may be +inf only when no route applies
  Vector witness;
  std::string certificate;  // "choi_rank_log" | "kraus_norm_entropy" | "user_analytic"
};

// Lower: multi-start stochastic ascent over pure inputs.  Upper: the best
// of ln(choi rank), the Kraus-norm weight entropy S({|V_k|^2}), and any
// caller-supplied analytic bound.
HpMaxEstimate estimate_Hp_max(const KrausChannel& phi, std::uint64_t seed, int restarts = 16,
                              std::optional<double> analytic_upper = std::nullopt);

// ----------------------------------------------------------------------------
// Summability conditions for unbounded Kraus families.
// ----------------------------------------------------------------------------

// Families are either a concrete finite list or the log-weighted pinching
// family (weights c_1 = 1, c_k = alpha/ln k), handled analytically with
// certified series tails.
struct SummabilityFamily {
  std::optional<KrausChannel> finite;
  std::optional<double> pinching_alpha;
  int truncation = 64;      // numeric window for probes on infinite families
  std::vector<double> h;    // optional exponents for condition (c); family default if empty
};

struct ConditionVerdict {
  std::string name;  // "a", "b", "c"
  bool holds = false;
  bool statistical = false;  // sampled evidence rather than a certificate
  std::string note;
  std::vector<std::pair<std::string, double>> numbers;
};

struct SummabilityReport {
  std::vector<ConditionVerdict> conditions;
  bool certified = false;  // some non-statistical condition holds
};

// Conditions on the family {V_k}:
//   (a) sup over pure phi of S({|V_k phi|^2}) finite,
//   (b) sum |V_k|^2 finite (then S of those weights is an explicit cap),
//   (c) exponents h_k >= 0 with |sum h_k V_k^dagger V_k| finite and
//       sum e^{-h_k} finite.
// (c) certifies (a) via the Gibbs variational ceiling
// sup S <= |sum h V^dagger V| + ln sum e^{-h}.
SummabilityReport corollary1_check(const SummabilityFamily& family, std::uint64_t seed);

}  // namespace qcent
