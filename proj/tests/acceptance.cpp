// Acceptance gate: twelve end-to-end criteria, one summary line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcent/bounds.hpp"
#include "qcent/channel.hpp"
#include "qcent/energy.hpp"
#include "qcent/entropy.hpp"
#include "qcent/errors.hpp"
#include "qcent/roof.hpp"
#include "qcent/rng.hpp"
#include "qcent/sampling.hpp"

using namespace qcent;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;
int g_index = 0;

void run(const char* title, const std::function<Outcome()>& body) {
  ++g_index;
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("threw: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("C%02d %s %s (%s, %.2fs)\n", g_index, out.pass ? "PASS" : "FAIL", title,
              out.detail.c_str(), secs);
  std::fflush(stdout);
  if (!out.pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome entropy_exactness() {
  double worst = 0.0;
  Rng rng(101);
  for (int d = 2; d <= 64; ++d) {
    RealVector flat = RealVector::Constant(d, 1.0 / d);
    worst = std::max(worst, std::abs(von_neumann_entropy(DensityOperator::diagonal(flat)) -
                                     std::log(double(d))));
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
    v.normalize();
    worst = std::max(worst, std::abs(von_neumann_entropy(DensityOperator::pure(v))));
  }
  return {worst <= 1e-10, "worst " + fmt(worst) + " vs 1e-10"};
}

Outcome extremal_pair_saturation() {
  double worst = 0.0;
  for (int d : {2, 4, 16}) {
    for (double eps : {0.1, 0.3, 1.0 - 1.0 / d}) {
      RealVector peak = RealVector::Zero(d);
      peak(0) = 1.0;
      RealVector spread = RealVector::Constant(d, eps / (d - 1));
      spread(0) = 1.0 - eps;
      double gap = std::abs(von_neumann_entropy(DensityOperator::diagonal(peak)) -
                            von_neumann_entropy(DensityOperator::diagonal(spread)));
      worst = std::max(worst, std::abs(gap - audenaert_bound(d, eps)));
    }
  }
  return {worst <= 1e-8, "worst " + fmt(worst) + " vs 1e-8"};
}

Outcome gibbs_anchors() {
  EnergyProfile two(HamiltonianSpectrum::explicit_levels({0.0, 1.0}, TailModel::Finite));
  double d1 = std::abs(gibbs_parameter(two, 0.25) - std::log(3.0));
  double d2 = std::abs(F_H(two, 0.25) - binary_entropy(0.25));

  EnergyProfile osc(HamiltonianSpectrum::oscillator({1.0}));
  double d3 = std::abs(gibbs_parameter(osc, 1.5) - std::log(2.0));
  double d4 = std::abs(F_H(osc, 1.5) - 2.0 * std::log(2.0));

  bool pass = d1 <= 1e-8 && d2 <= 1e-8 && d3 <= 1e-6 && d4 <= 1e-6;
  return {pass, "two-level " + fmt(std::max(d1, d2)) + " vs 1e-8, oscillator " +
                    fmt(std::max(d3, d4)) + " vs 1e-6"};
}

Outcome pair_ratio_mode_limit() {
  // Documented threshold: E >= 40 for unit-frequency modes.
  double worst = 0.0;
  for (int modes : {1, 2, 3}) {
    std::vector<double> omega(modes, 1.0);
    HamiltonianSpectrum spec = HamiltonianSpectrum::oscillator(omega);
    double target = 1.0 + 1.0 / modes;
    for (double e : {40.0, 60.0, 80.0}) {
      HamiltonianSpectrum wide = spec;
      wide.cutoff = e;  // keep every level a pair could use
      worst = std::max(worst, std::abs(bd_ratio(wide, e) / target - 1.0));
    }
  }
  return {worst <= 0.05, "worst relative gap " + fmt(worst) + " vs 0.05"};
}

Outcome envelope_contract() {
  auto profile = std::make_shared<EnergyProfile>(HamiltonianSpectrum::oscillator({1.0}));
  FhatHandle fhat = fhat_star_handle(profile);
  const double tau = 1e-8;
  double min_step = 1e300, worst_ratio = -1e300, worst_dom = -1e300;
  double prev = -1.0, prev_ratio = 1e300;
  for (int i = 0; i < 100; ++i) {
    double e = 0.01 * std::pow(1.1, i);
    double f = fhat.value(e);
    double ratio = f / std::sqrt(e);
    if (i > 0) {
      min_step = std::min(min_step, f - prev);
      worst_ratio = std::max(worst_ratio, ratio - prev_ratio);
    }
    worst_dom = std::max(worst_dom, F_bar(*profile, e) - f);
    prev = f;
    prev_ratio = ratio;
  }
  bool pass = min_step > tau && worst_ratio <= tau && worst_dom <= tau;
  return {pass, "min step " + fmt(min_step) + ", ratio drift " + fmt(worst_ratio) +
                    ", domination gap " + fmt(worst_dom) + " vs 1e-8"};
}

Outcome energy_bound_sweep() {
  HamiltonianSpectrum spec = HamiltonianSpectrum::oscillator({1.0}, 40.0);
  auto profile = std::make_shared<EnergyProfile>(spec);
  const int dim = profile->level_count();
  const double e0 = profile->ground_energy();

  struct Case {
    KrausChannel chan;
    double hp;
  };
  std::vector<Case> cases;
  cases.push_back({identity_channel(dim), 0.0});
  // (1-p) rho + p |0><0| has rank <= 2 on pure inputs: Hp_max <= ln 2.
  cases.push_back({mix_with_ground_channel(dim, 0.3), std::log(2.0)});

  Rng rng = Rng(2024).stream("energy_sweep");
  double worst = -1e300;
  long checked = 0;
  for (double eps : {0.05, 0.2}) {
    for (double e : {2.0, 8.0}) {
      std::vector<std::vector<double>> bounds(cases.size());
      std::vector<double> ts;
      {
        BoundRequest req;
        req.eps = eps;
        req.ebar = e - e0;
        req.fhat = fhat_star_handle(profile);
        req.hp_max = 0.0;
        double tmax = admissible_t_max(req);
        for (int k = 1; k <= 8; ++k) ts.push_back(tmax * k / 8.0);
        for (std::size_t c = 0; c < cases.size(); ++c) {
          req.hp_max = cases[c].hp;
          for (double t : ts) {
            req.t = t;
            bounds[c].push_back(theorem2_bound(req).value);
          }
        }
      }
      for (int s = 0; s < 1000; ++s) {
        ConstrainedPair pair = random_energy_constrained_pair(spec, e, eps, rng);
        for (std::size_t c = 0; c < cases.size(); ++c) {
          double gap = std::abs(output_entropy(cases[c].chan, pair.rho) -
                                output_entropy(cases[c].chan, pair.sigma));
          for (double b : bounds[c]) {
            worst = std::max(worst, gap - b);
            ++checked;
          }
        }
      }
    }
  }
  return {worst <= 1e-8, std::to_string(checked) + " comparisons, worst excess " +
                             fmt(worst) + " vs 1e-8"};
}

Outcome output_dim_continuity() {
  Rng rng = Rng(77).stream("dim4_sweep");
  double worst = -1e300;
  for (int c = 0; c < 50; ++c) {
    int din = 2 + int(rng.below(4));
    int kraus = 2 + int(rng.below(3));
    KrausChannel chan = random_channel(din, 4, kraus, rng);
    for (int s = 0; s < 1000; ++s) {
      DensityOperator rho = random_state(din, rng);
      DensityOperator sigma = random_state(din, rng);
      double eps = std::min(trace_distance(rho, sigma), 1.0);
      double gap = std::abs(output_entropy(chan, rho) - output_entropy(chan, sigma));
      worst = std::max(worst, gap - afw_bound(std::log(4.0), eps));
    }
  }
  return {worst <= 1e-8, "worst excess " + fmt(worst) + " vs 1e-8"};
}

Outcome pure_state_coincidence() {
  Rng rng = Rng(31).stream("pure_coincidence");
  double worst = 0.0;
  for (int s = 0; s < 500; ++s) {
    int din = 2 + int(rng.below(4));
    int dout = 2 + int(rng.below(4));
    int kraus = 1 + int(rng.below(4));
    if (dout * kraus < din) kraus = (din + dout - 1) / dout;
    KrausChannel chan = random_channel(din, dout, kraus, rng);
    DensityOperator rho = DensityOperator::pure(random_pure_state(din, rng));
    worst = std::max(worst,
                     std::abs(output_entropy(chan, rho) - entropy_exchange(chan, rho)));
  }
  return {worst <= 1e-8, "500 instances, worst gap " + fmt(worst) + " vs 1e-8"};
}

Outcome summability_verdicts() {
  SummabilityFamily family;
  family.pinching_alpha = 0.5;
  family.truncation = 64;
  SummabilityReport report = corollary1_check(family, 11);
  const ConditionVerdict* a = nullptr;
  const ConditionVerdict* b = nullptr;
  const ConditionVerdict* c = nullptr;
  for (const auto& cond : report.conditions) {
    if (cond.name == "a") a = &cond;
    if (cond.name == "b") b = &cond;
    if (cond.name == "c") c = &cond;
  }
  if (!a || !b || !c) return {false, "missing condition verdicts"};
  double ceiling = -1.0;
  for (const auto& [key, val] : c->numbers)
    if (key == "gibbs_ceiling") ceiling = val;
  bool pass = !b->holds && !b->statistical && c->holds && !c->statistical &&
              report.certified && a->holds && std::abs(ceiling - 1.4977003024707454) <= 0.01;
  return {pass, std::string("b ") + (b->holds ? "holds" : "diverges") + ", c " +
                    (c->holds ? "certified" : "open") + ", ceiling " + fmt(ceiling)};
}

Outcome roof_oracle_equivalence() {
  // Two-member scan slack at 64 grid points per axis, doubled for safety.
  const double grid_slack = (3.14159265358979 / 64.0) * (3.14159265358979 / 64.0);
  const double tol = std::max(2.0 * grid_slack, 1e-3);
  KrausChannel reduce = trace_out_second_channel(2, 2);
  Rng rng = Rng(404).stream("roof_states");
  double worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    DensityOperator rho = random_state(4, rng, 2);
    double est = eof_estimate(rho, 2, 2, 1000 + s).value;
    double oracle = brute_force_roof(reduce, rho).value;
    worst = std::max(worst, std::abs(est - oracle));
  }

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  double bell_gap =
      std::abs(eof_estimate(DensityOperator::pure(bell), 2, 2, 99).value - std::log(2.0));
  bool pass = worst <= tol && bell_gap <= 1e-4;
  return {pass, "worst optimizer gap " + fmt(worst) + " vs " + fmt(tol) +
                    ", maximally entangled gap " + fmt(bell_gap) + " vs 1e-4"};
}

Outcome bound_monotonicity() {
  auto profile = std::make_shared<EnergyProfile>(HamiltonianSpectrum::oscillator({1.0}));
  double worst = -1e300;

  BoundRequest req;
  req.ebar = 2.0;
  req.hp_max = std::log(2.0);
  req.fhat = fhat_star_handle(profile);
  req.eps = 0.5;
  req.t = 0.9 * admissible_t_max(req);  // admissible across the whole grid
  double prev = -1e300;
  for (int i = 0; i < 50; ++i) {
    req.eps = 0.02 + (0.5 - 0.02) * i / 49.0;
    double v = theorem2_bound(req).value;
    worst = std::max(worst, prev - v);
    prev = v;
  }

  req.eps = 0.2;
  req.ebar = 0.5;
  req.t = 0.9 * admissible_t_max(req);
  prev = -1e300;
  for (int i = 0; i < 20; ++i) {
    req.ebar = 0.5 + (8.0 - 0.5) * i / 19.0;
    double v = theorem2_bound(req).value;
    worst = std::max(worst, prev - v);
    prev = v;
  }
  return {worst <= 1e-10, "worst decrease " + fmt(worst) + " vs 1e-10"};
}

Outcome deterministic_reports() {
  const char* bin = std::getenv("QCENT_BIN");
  if (!bin) return {false, "QCENT_BIN is not set"};
  std::string base = std::string(bin) + " verify --suite all --seed 42";
  std::string p1 = "acceptance_verify_1.json", p2 = "acceptance_verify_2.json";
  if (std::system((base + " > " + p1).c_str()) != 0) return {false, "first run failed"};
  if (std::system((base + " > " + p2).c_str()) != 0) return {false, "second run failed"};
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::string a = slurp(p1), b = slurp(p2);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  if (a.empty()) return {false, "no report produced"};
  bool same = (a == b);
  return {same, same ? std::to_string(a.size()) + " bytes, byte-identical"
                     : "reports differ"};
}

}  // namespace

int main() {
  run("entropy exactness on flat and pure states", entropy_exactness);
  run("extremal pair saturates the dimension bound", extremal_pair_saturation);
  run("gibbs anchors for the two-level system and the unit oscillator", gibbs_anchors);
  run("pair counting ratio reaches 1 + 1/modes for E >= 40", pair_ratio_mode_limit);
  run("certified envelope contract on a geometric grid", envelope_contract);
  run("energy constrained bound holds across the truncated oscillator sweep",
      energy_bound_sweep);
  run("output dimension bound holds for random dim-4 channels", output_dim_continuity);
  run("output entropy equals entropy exchange on pure inputs", pure_state_coincidence);
  run("log-weighted family verdicts: (b) diverges, (c) certifies", summability_verdicts);
  run("roof optimizers agree with the deterministic oracle", roof_oracle_equivalence);
  run("bound is monotone in the radius and the energy ceiling", bound_monotonicity);
  run("verification reports are byte-identical across reruns", deterministic_reports);
  return g_failures;
}
