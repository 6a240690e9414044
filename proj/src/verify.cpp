#include "qcent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "qcent/bounds.hpp"
#include "qcent/channel.hpp"
#include "qcent/energy.hpp"
#include "qcent/entropy.hpp"
#include "qcent/errors.hpp"
#include "qcent/io.hpp"
#include "qcent/linalg.hpp"
#include "qcent/rng.hpp"
#include "qcent/roof.hpp"
#include "qcent/sampling.hpp"
#include "qcent/tolerances.hpp"

namespace qcent {

namespace {

struct Harness {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CheckResult> checks;

  Rng stream(const char* name) const { return Rng(seed).stream(name); }

  void record(const char* suite, const char* name, int n, double worst, double tolerance,
              bool statistical = false) {
    checks.push_back({name, suite, n, worst, tolerance, statistical, worst <= tolerance});
  }

  int capped(int cap) const { return std::max(1, std::min(samples, cap)); }
};

WeightVector random_simplex(int k, Rng& rng) {
  WeightVector p(static_cast<std::size_t>(k));
  double s = 0.0;
  for (auto& x : p) {
    x = -std::log(rng.uniform());
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

Matrix random_isometry(int rows, int cols, Rng& rng) {
  Matrix u = random_unitary(rows, rng);
  return u.leftCols(cols);
}

double mean_energy(const std::vector<double>& levels, const DensityOperator& rho) {
  double e = 0.0;
  for (int i = 0; i < rho.dim(); ++i) e += levels[static_cast<std::size_t>(i)] * rho.matrix()(i, i).real();
  return e;
}

// ----------------------------------------------------------------------------
// core: entropy identities and continuity on plain states.
// ----------------------------------------------------------------------------

void check_core(Harness& h) {
  const double num = tol().num;

  {
    Rng rng = h.stream("pure_state_entropy_zero");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(7));
      worst = std::max(worst, std::abs(von_neumann_entropy(DensityOperator::pure(random_pure_state(d, rng)))));
    }
    h.record("core", "pure_state_entropy_zero", n, worst, num);
  }

  {
    double worst = -1.0;
    int n = 0;
    for (int d = 2; d <= 16; ++d, ++n) {
      DensityOperator u = DensityOperator::from_matrix(identity(d) / static_cast<double>(d));
      worst = std::max(worst, std::abs(von_neumann_entropy(u) - std::log(static_cast<double>(d))));
    }
    h.record("core", "uniform_state_entropy", n, worst, num);
  }

  {
    Rng rng = h.stream("entropy_homogeneity");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(5));
      DensityOperator rho = random_state(d, rng);
      double c = rng.uniform(0.05, 1.0);
      worst = std::max(worst,
                       std::abs(von_neumann_entropy(rho.scaled(c)) - c * von_neumann_entropy(rho)));
    }
    h.record("core", "entropy_homogeneity", n, worst, num);
  }

  {
    Rng rng = h.stream("diagonal_matches_weight_entropy");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(10));
      double scale = rng.uniform(0.2, 1.0);
      WeightVector w(static_cast<std::size_t>(d));
      double sum = 0.0;
      for (auto& x : w) {
        x = rng.uniform();
        sum += x;
      }
      for (auto& x : w) x *= scale / sum;
      RealVector diag = Eigen::Map<const RealVector>(w.data(), d);
      worst = std::max(worst, std::abs(von_neumann_entropy(DensityOperator::diagonal(diag)) -
                                       extended_shannon_entropy(w)));
    }
    h.record("core", "diagonal_matches_weight_entropy", n, worst, num);
  }

  {
    // H(sum p_k rho_k) <= sum p_k H(rho_k) + S({p_k}) for subnormalized pieces.
    Rng rng = h.stream("mixture_entropy_ceiling");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(5));
      int k = 2 + static_cast<int>(rng.below(3));
      WeightVector p = random_simplex(k, rng);
      Matrix acc = Matrix::Zero(d, d);
      double rhs = extended_shannon_entropy(p);
      for (int i = 0; i < k; ++i) {
        DensityOperator piece = random_state(d, rng).scaled(rng.uniform(0.3, 1.0));
        acc += p[static_cast<std::size_t>(i)] * piece.matrix();
        rhs += p[static_cast<std::size_t>(i)] * von_neumann_entropy(piece);
      }
      worst = std::max(worst, von_neumann_entropy(DensityOperator::from_matrix(acc)) - rhs);
    }
    h.record("core", "mixture_entropy_ceiling", n, worst, num);
  }

  {
    // 0 <= H(p rho + (1-p) sigma) - [p H(rho) + (1-p) H(sigma)] <= h2(p).
    Rng rng = h.stream("mixture_concavity_window");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(5));
      DensityOperator rho = random_state(d, rng), sigma = random_state(d, rng);
      double p = rng.uniform();
      double mixed = von_neumann_entropy(
          DensityOperator::from_matrix(p * rho.matrix() + (1.0 - p) * sigma.matrix()));
      double gap = mixed - (p * von_neumann_entropy(rho) + (1.0 - p) * von_neumann_entropy(sigma));
      worst = std::max({worst, -gap, gap - binary_entropy(p)});
    }
    h.record("core", "mixture_concavity_window", n, worst, num);
  }

  {
    // Orthogonal supports turn the subadditive cap into an equality.
    Rng rng = h.stream("orthogonal_sum_additivity");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d1 = 2 + static_cast<int>(rng.below(3));
      int d2 = 2 + static_cast<int>(rng.below(3));
      double t1 = rng.uniform(0.1, 0.5), t2 = rng.uniform(0.1, 0.5);
      DensityOperator r1 = random_state(d1, rng).scaled(t1);
      DensityOperator r2 = random_state(d2, rng).scaled(t2);
      Matrix block = Matrix::Zero(d1 + d2, d1 + d2);
      block.topLeftCorner(d1, d1) = r1.matrix();
      block.bottomRightCorner(d2, d2) = r2.matrix();
      double lhs = von_neumann_entropy(DensityOperator::from_matrix(block));
      double rhs = von_neumann_entropy(r1) + von_neumann_entropy(r2) +
                   extended_shannon_entropy({t1, t2});
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    h.record("core", "orthogonal_sum_additivity", n, worst, num);
  }

  {
    // H(sum rho_k) <= sum H(rho_k) + S({Tr rho_k}), same space, overlapping.
    Rng rng = h.stream("operator_sum_subadditivity");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(5));
      int k = 2 + static_cast<int>(rng.below(3));
      WeightVector traces;
      Matrix acc = Matrix::Zero(d, d);
      double sum_h = 0.0;
      for (int i = 0; i < k; ++i) {
        DensityOperator piece = random_state(d, rng).scaled(rng.uniform(0.05, 1.0 / k));
        traces.push_back(piece.trace());
        acc += piece.matrix();
        sum_h += von_neumann_entropy(piece);
      }
      double lhs = von_neumann_entropy(DensityOperator::from_matrix(acc));
      worst = std::max(worst, lhs - sum_h - extended_shannon_entropy(traces));
    }
    h.record("core", "operator_sum_subadditivity", n, worst, num);
  }

  {
    // |H(rho) - H(sigma)| <= eps ln(d-1) + h2(eps) at eps = trace distance.
    Rng rng = h.stream("pair_continuity_bound");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(5));
      DensityOperator rho = random_state(d, rng), sigma = random_state(d, rng);
      double eps = trace_distance(rho, sigma);
      if (eps > 1.0 - 1.0 / d - 1e-9) continue;
      double diff = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
      worst = std::max(worst, diff - audenaert_bound(d, eps));
    }
    h.record("core", "pair_continuity_bound", n, worst, num);
  }

  {
    // diag(1,0,...) against diag(1-eps, eps/(d-1), ...) meets the cap exactly.
    double worst = -1.0;
    int n = 0;
    for (int d : {2, 4, 16}) {
      for (double eps : {0.1, 0.3, 1.0 - 1.0 / d}) {
        RealVector a = RealVector::Zero(d), b = RealVector::Zero(d);
        a(0) = 1.0;
        b(0) = 1.0 - eps;
        for (int i = 1; i < d; ++i) b(i) = eps / (d - 1);
        DensityOperator rho = DensityOperator::diagonal(a), sigma = DensityOperator::diagonal(b);
        worst = std::max(worst, std::abs(trace_distance(rho, sigma) - eps));
        double diff = std::abs(von_neumann_entropy(sigma) - von_neumann_entropy(rho));
        worst = std::max(worst, std::abs(diff - audenaert_bound(d, eps)));
        ++n;
      }
    }
    h.record("core", "extremal_pair_saturation", n, worst, num);
  }

  {
    Rng rng = h.stream("trace_distance_metric");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(4));
      DensityOperator a = random_state(d, rng), b = random_state(d, rng), c = random_state(d, rng);
      worst = std::max(worst, std::abs(trace_distance(a, b) - trace_distance(b, a)));
      worst = std::max(worst, trace_distance(a, c) - trace_distance(a, b) - trace_distance(b, c));
    }
    h.record("core", "trace_distance_metric", n, worst, num);
  }
}

// ----------------------------------------------------------------------------
// channel: output/environment entropies and structure maps.
// ----------------------------------------------------------------------------

KrausChannel small_random_channel(Rng& rng) {
  int din = 2 + static_cast<int>(rng.below(4));
  int dout = 2 + static_cast<int>(rng.below(4));
  int m = 1 + static_cast<int>(rng.below(4));
  if (dout * m < din) m = (din + dout - 1) / dout;
  return random_channel(din, dout, m, rng);
}

void check_channel(Harness& h) {
  const double num = tol().num;

  {
    Rng rng = h.stream("pure_output_env_coincidence");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      DensityOperator rho = DensityOperator::pure(random_pure_state(phi.input_dim(), rng));
      worst = std::max(worst, std::abs(output_entropy(phi, rho) - entropy_exchange(phi, rho)));
    }
    h.record("channel", "pure_output_env_coincidence", n, worst, num);
  }

  {
    Rng rng = h.stream("output_env_triangle");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      DensityOperator rho = random_state(phi.input_dim(), rng);
      double gap = std::abs(output_entropy(phi, rho) - entropy_exchange(phi, rho));
      worst = std::max(worst, gap - von_neumann_entropy(rho));
    }
    h.record("channel", "output_env_triangle", n, worst, num);
  }

  {
    Rng rng = h.stream("input_entropy_subadditivity");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      DensityOperator rho = random_state(phi.input_dim(), rng);
      worst = std::max(worst, von_neumann_entropy(rho) - output_entropy(phi, rho) -
                                  entropy_exchange(phi, rho));
    }
    h.record("channel", "input_entropy_subadditivity", n, worst, num);
  }

  {
    // 0 <= H_Phi(mix) - mix of H_Phi <= h2(p).
    Rng rng = h.stream("output_mixture_window");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      DensityOperator rho = random_state(phi.input_dim(), rng);
      DensityOperator sigma = random_state(phi.input_dim(), rng);
      double p = rng.uniform();
      DensityOperator mix =
          DensityOperator::from_matrix(p * rho.matrix() + (1.0 - p) * sigma.matrix());
      double gap = output_entropy(phi, mix) -
                   (p * output_entropy(phi, rho) + (1.0 - p) * output_entropy(phi, sigma));
      worst = std::max({worst, -gap, gap - binary_entropy(p)});
    }
    h.record("channel", "output_mixture_window", n, worst, num);
  }

  {
    // H(Phi(phi phi^dag)) <= S({|V_k phi|^2}).
    Rng rng = h.stream("pure_output_weight_ceiling");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      Vector v = random_pure_state(phi.input_dim(), rng);
      WeightVector w;
      for (const Matrix& op : phi.kraus()) w.push_back((op * v).squaredNorm());
      worst = std::max(worst, output_entropy(phi, DensityOperator::pure(v)) -
                                  extended_shannon_entropy(w));
    }
    h.record("channel", "pure_output_weight_ceiling", n, worst, num);
  }

  {
    // H_Phi(rho) <= H(rho) + sup-over-pure H_Phi, sup taken by sampling.
    Rng rng = h.stream("output_vs_input_plus_sup");
    int n = h.capped(60);
    double worst = -1.0;
    const double slack = 0.1;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      double sup = 0.0;
      for (int i = 0; i < 24; ++i)
        sup = std::max(sup, output_entropy(
                                phi, DensityOperator::pure(random_pure_state(phi.input_dim(), rng))));
      DensityOperator rho = random_state(phi.input_dim(), rng);
      worst = std::max(worst, output_entropy(phi, rho) - von_neumann_entropy(rho) - sup);
    }
    h.record("channel", "output_vs_input_plus_sup", n, worst, slack, /*statistical=*/true);
  }

  {
    // Mixing the Kraus family by a unitary leaves both entropies unchanged.
    Rng rng = h.stream("kraus_mixing_invariance");
    int n = h.capped(60);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      int m = phi.kraus_count();
      Matrix u = random_unitary(m, rng);
      std::vector<Matrix> mixed(static_cast<std::size_t>(m),
                                Matrix::Zero(phi.output_dim(), phi.input_dim()));
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          mixed[static_cast<std::size_t>(a)] += u(a, b) * phi.kraus()[static_cast<std::size_t>(b)];
      KrausChannel psi = KrausChannel::from_kraus(mixed, phi.kind());
      DensityOperator rho = random_state(phi.input_dim(), rng);
      worst = std::max(worst, std::abs(output_entropy(phi, rho) - output_entropy(psi, rho)));
      worst = std::max(worst, std::abs(entropy_exchange(phi, rho) - entropy_exchange(psi, rho)));
    }
    h.record("channel", "kraus_mixing_invariance", n, worst, num);
  }

  {
    Rng rng = h.stream("compose_action");
    int n = h.capped(60);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel inner = small_random_channel(rng);
      int dout = 2 + static_cast<int>(rng.below(3));
      int m = std::max(2, (inner.output_dim() + dout - 1) / dout);
      KrausChannel outer = random_channel(inner.output_dim(), dout, m, rng);
      DensityOperator rho = random_state(inner.input_dim(), rng);
      Matrix direct = apply(outer, apply(inner, rho)).matrix();
      Matrix chained = apply(compose(outer, inner), rho).matrix();
      worst = std::max(worst, (direct - chained).cwiseAbs().maxCoeff());
    }
    h.record("channel", "compose_action", n, worst, num);
  }

  {
    Rng rng = h.stream("tensor_action");
    int n = h.capped(60);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel a = random_channel(2, 2, 2, rng);
      KrausChannel b = random_channel(3, 2, 2, rng);
      DensityOperator rho = random_state(2, rng), sigma = random_state(3, rng);
      Matrix joint = apply(tensor(a, b), DensityOperator::from_matrix(
                                             kron(rho.matrix(), sigma.matrix())))
                         .matrix();
      Matrix split = kron(apply(a, rho).matrix(), apply(b, sigma).matrix());
      worst = std::max(worst, (joint - split).cwiseAbs().maxCoeff());
    }
    h.record("channel", "tensor_action", n, worst, num);
  }

  {
    Rng rng = h.stream("choi_rank_multiplicative");
    int n = h.capped(30);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel a = random_channel(2, 2, 1 + static_cast<int>(rng.below(2)), rng);
      KrausChannel b = random_channel(2, 2, 1 + static_cast<int>(rng.below(2)), rng);
      worst = std::max(worst, std::abs(static_cast<double>(choi_rank(tensor(a, b))) -
                                       static_cast<double>(choi_rank(a) * choi_rank(b))));
    }
    h.record("channel", "choi_rank_multiplicative", n, worst, 0.5);
  }

  {
    Rng rng = h.stream("purification_roundtrip");
    int n = h.capped(60);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(4));
      DensityOperator rho = random_state(d, rng);
      Vector v = purify(rho);
      Matrix reduced = partial_trace_second(v * v.adjoint(), d, d);
      worst = std::max(worst, (reduced - rho.matrix()).cwiseAbs().maxCoeff());
    }
    h.record("channel", "purification_roundtrip", n, worst, num);
  }

  {
    Rng rng = h.stream("complementary_trace");
    int n = h.samples;
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = small_random_channel(rng);
      DensityOperator rho = random_state(phi.input_dim(), rng);
      worst = std::max(worst, std::abs(complementary_state(phi, rho).trace() -
                                       apply(phi, rho).trace()));
    }
    h.record("channel", "complementary_trace", n, worst, num);
  }
}

// ----------------------------------------------------------------------------
// energy: Gibbs machinery and the entropy-energy curves.
// ----------------------------------------------------------------------------

HamiltonianSpectrum random_explicit_spectrum(Rng& rng) {
  int n = 4 + static_cast<int>(rng.below(7));
  std::vector<double> lv(static_cast<std::size_t>(n));
  for (auto& e : lv) e = rng.uniform(0.0, 3.0);
  return HamiltonianSpectrum::explicit_levels(std::move(lv));
}

void check_energy(Harness& h) {
  const double num = tol().num;

  {
    Rng rng = h.stream("gibbs_mean_energy");
    int n = h.capped(40);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      EnergyProfile profile(random_explicit_spectrum(rng));
      double e0 = profile.ground_energy();
      double e = e0 + rng.uniform(0.25, 0.75) * (profile.mean_sup() - e0);
      worst = std::max(worst, std::abs(mean_energy(profile.levels(), gibbs_state(profile, e)) - e));
    }
    h.record("energy", "gibbs_mean_energy", n, worst, 1e-6);
  }

  {
    Rng rng = h.stream("gibbs_entropy_matches_fh");
    int n = h.capped(40);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      EnergyProfile profile(random_explicit_spectrum(rng));
      double e0 = profile.ground_energy();
      double e = e0 + rng.uniform(0.25, 0.75) * (profile.mean_sup() - e0);
      worst = std::max(worst,
                       std::abs(von_neumann_entropy(gibbs_state(profile, e)) - F_H(profile, e)));
    }
    h.record("energy", "gibbs_entropy_matches_fh", n, worst, 1e-6);
  }

  {
    // Any state under the energy ceiling stays below the Gibbs entropy.
    Rng rng = h.stream("gibbs_maximizes_entropy");
    int n = h.capped(40);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      HamiltonianSpectrum spec = random_explicit_spectrum(rng);
      EnergyProfile profile(spec);
      double e0 = profile.ground_energy();
      double e = e0 + rng.uniform(0.3, 0.8) * (profile.mean_sup() - e0);
      ConstrainedPair pair = random_energy_constrained_pair(spec, e, 0.0, rng);
      worst = std::max(worst, von_neumann_entropy(pair.rho) - F_H(profile, e));
    }
    h.record("energy", "gibbs_maximizes_entropy", n, worst, num);
  }

  {
    Rng rng = h.stream("fh_nondecreasing");
    int n = h.capped(20);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      EnergyProfile profile(random_explicit_spectrum(rng));
      double e0 = profile.ground_energy(), top = profile.mean_sup();
      double prev = F_H(profile, e0);
      for (int i = 1; i <= 30; ++i) {
        double e = e0 + (top - e0) * i / 30.0;
        double cur = F_H(profile, e);
        worst = std::max(worst, prev - cur);
        prev = cur;
      }
    }
    h.record("energy", "fh_nondecreasing", n, worst, 1e-10);
  }

  {
    Rng rng = h.stream("fbar_shift_identity");
    int n = h.capped(20);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      EnergyProfile profile(random_explicit_spectrum(rng));
      double e0 = profile.ground_energy();
      for (int i = 0; i <= 10; ++i) {
        double ebar = (profile.mean_sup() - e0) * i / 10.0;
        worst = std::max(worst, std::abs(F_bar(profile, ebar) - F_H(profile, ebar + e0)));
      }
    }
    h.record("energy", "fbar_shift_identity", n, worst, num);
  }

  {
    // The certified envelope: nondecreasing, ratio to sqrt(E) nonincreasing,
    // and it dominates the raw curve.
    Rng rng = h.stream("fhat_envelope_contract");
    int n = h.capped(4);
    double worst_up = -1.0, worst_ratio = -1.0, worst_dom = -1.0;
    for (int s = 0; s < n; ++s) {
      std::shared_ptr<EnergyProfile> profile;
      if (s % 2 == 0) {
        profile = std::make_shared<EnergyProfile>(
            HamiltonianSpectrum::oscillator({rng.uniform(0.5, 2.0)}));
      } else {
        profile = std::make_shared<EnergyProfile>(random_explicit_spectrum(rng));
      }
      double prev = -1.0, prev_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 20; ++i) {
        double e = 0.02 * std::pow(1.45, i);
        double f = F_hat_star(*profile, e);
        double fb = F_bar(*profile, e);
        worst_dom = std::max(worst_dom, fb - f);
        if (i > 0) worst_up = std::max(worst_up, prev - f);
        double ratio = f / std::sqrt(e);
        if (i > 0) worst_ratio = std::max(worst_ratio, ratio - prev_ratio);
        prev = f;
        prev_ratio = ratio;
      }
    }
    h.record("energy", "fhat_nondecreasing", n, worst_up, 1e-10);
    h.record("energy", "fhat_ratio_nonincreasing", n, worst_ratio, 1e-10);
    h.record("energy", "fhat_dominates_fbar", n, worst_dom, num);
  }

  {
    auto profile = std::make_shared<EnergyProfile>(HamiltonianSpectrum::oscillator({1.0}));
    FhatHandle fhat = fhat_star_handle(profile);
    double worst = -1.0;
    int n = 0;
    for (int d : {2, 3, 5}) {
      double gamma = gamma_of_d(fhat, d);
      worst = std::max(worst, std::abs(fhat.value(gamma) - std::log(static_cast<double>(d))));
      ++n;
    }
    h.record("energy", "gamma_envelope_roundtrip", n, worst, 1e-6);
  }

  {
    double worst = -1.0;
    std::vector<double> two = generate_levels(HamiltonianSpectrum::oscillator({1.0, 1.0}, 2.1));
    std::vector<double> expect_two{1.0, 2.0, 2.0};
    if (two.size() != expect_two.size())
      worst = 1.0;
    else
      for (std::size_t i = 0; i < two.size(); ++i)
        worst = std::max(worst, std::abs(two[i] - expect_two[i]));
    std::vector<double> one = generate_levels(HamiltonianSpectrum::oscillator({1.0}, 3.6));
    std::vector<double> expect_one{0.5, 1.5, 2.5, 3.5};
    if (one.size() != expect_one.size())
      worst = 1.0;
    else
      for (std::size_t i = 0; i < one.size(); ++i)
        worst = std::max(worst, std::abs(one[i] - expect_one[i]));
    h.record("energy", "oscillator_level_enumeration", 2, worst, num);
  }

  {
    EnergyProfile profile(HamiltonianSpectrum::oscillator({1.0}));
    double worst = -1.0;
    int n = 0;
    for (double lambda : {0.5, 0.7, 1.0, 2.0}) {
      double closed = std::exp(-0.5 * lambda) / (1.0 - std::exp(-lambda));
      worst = std::max(worst, std::abs(partition_function(profile, lambda) - closed) / closed);
      ++n;
    }
    h.record("energy", "partition_closed_form_agreement", n, worst, 1e-9);
  }

  {
    double worst = -1.0;
    int n = 0;
    for (int l : {1, 2}) {
      std::vector<double> omega(static_cast<std::size_t>(l), 1.0);
      double target = 1.0 + 1.0 / l;
      double ratio = bd_ratio(HamiltonianSpectrum::oscillator(omega), 40.0);
      worst = std::max(worst, std::abs(ratio - target) / target);
      ++n;
    }
    h.record("energy", "bd_ratio_mode_limit", n, worst, 0.05);
  }
}

// ----------------------------------------------------------------------------
// bound: continuity bounds, their premises, and certified ceilings.
// ----------------------------------------------------------------------------

void check_bound(Harness& h) {
  const double num = tol().num;

  {
    double worst = std::abs(audenaert_bound(2, 0.5) - std::log(2.0));
    h.record("bound", "audenaert_anchor", 1, worst, num);
  }

  {
    // Output-entropy continuity with the ln(dim) range cap.
    Rng rng = h.stream("bounded_output_continuity");
    int n = h.capped(80);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int din = 2 + static_cast<int>(rng.below(4));
      KrausChannel phi = random_channel(din, 4, 2, rng);
      DensityOperator rho = random_state(din, rng), sigma = random_state(din, rng);
      double eps = trace_distance(rho, sigma);
      double cap = eps * std::log(4.0) + g_function(eps);
      worst = std::max(worst,
                       std::abs(output_entropy(phi, rho) - output_entropy(phi, sigma)) - cap);
    }
    h.record("bound", "bounded_output_continuity", n, worst, num);
  }

  {
    // The energy-constrained bound holds on sampled premise-satisfying pairs.
    Rng rng = h.stream("energy_bound_validity");
    int n = h.capped(40);
    double worst = -1.0;
    HamiltonianSpectrum spec = HamiltonianSpectrum::oscillator({1.0}, 20.0);
    auto profile = std::make_shared<EnergyProfile>(spec);
    FhatHandle fhat = fhat_star_handle(profile);
    int dim = profile->level_count();
    KrausChannel ident = identity_channel(dim);
    KrausChannel mixer = mix_with_ground_channel(dim, 0.3);
    for (int s = 0; s < n; ++s) {
      double eps = (rng.below(2) == 0) ? 0.05 : 0.2;
      double energy = (rng.below(2) == 0) ? 2.0 : 8.0;
      ConstrainedPair pair = random_energy_constrained_pair(spec, energy, eps, rng);
      const KrausChannel& phi = (rng.below(2) == 0) ? ident : mixer;
      double hp = (&phi == &ident) ? 0.0 : std::log(2.0);
      double diff = std::abs(output_entropy(phi, pair.rho) - output_entropy(phi, pair.sigma));
      BoundRequest req{eps, energy - profile->ground_energy(), hp, fhat, std::nullopt,
                       std::nullopt};
      double t_max = admissible_t_max(req);
      for (double frac : {0.15, 0.4, 0.7, 1.0}) {
        req.t = frac * t_max;
        worst = std::max(worst, diff - theorem2_bound(req).value);
      }
    }
    h.record("bound", "energy_bound_validity", n, worst, num);
  }

  {
    Rng rng = h.stream("bound_positivity");
    int n = h.capped(40);
    double worst = -1.0;
    FhatHandle fhat = fhat_oscillator_handle({1.0});
    for (int s = 0; s < n; ++s) {
      BoundRequest req{rng.uniform(0.01, 0.9), rng.uniform(0.1, 10.0), rng.uniform(0.0, 1.0),
                       fhat, std::nullopt, std::nullopt};
      BoundResult r = theorem2_bound(req);
      worst = std::max({worst, -r.value, -r.terms.main, -r.terms.g_small, -r.terms.g_large});
    }
    h.record("bound", "bound_positivity", n, worst, num);
  }

  {
    // Nondecreasing in eps at fixed admissible t.
    FhatHandle fhat = fhat_oscillator_handle({1.0});
    double ebar = 2.0;
    double eps_hi = 0.4;
    BoundRequest probe{eps_hi, ebar, 0.2, fhat, std::nullopt, std::nullopt};
    double t = 0.9 * admissible_t_max(probe);
    double prev = -1.0, worst = -1.0;
    int n = 0;
    for (int i = 0; i < 50; ++i) {
      double eps = 0.02 + (eps_hi - 0.02) * i / 49.0;
      BoundRequest req{eps, ebar, 0.2, fhat, t, std::nullopt};
      double v = theorem2_bound(req).value;
      if (i > 0) worst = std::max(worst, prev - v);
      prev = v;
      ++n;
    }
    h.record("bound", "bound_monotone_eps", n, worst, 1e-10);
  }

  {
    // Nondecreasing in the energy ceiling at fixed admissible t.
    FhatHandle fhat = fhat_oscillator_handle({1.0});
    double eps = 0.1;
    BoundRequest probe{eps, 0.5, 0.2, fhat, std::nullopt, std::nullopt};
    double t = 0.9 * admissible_t_max(probe);
    double prev = -1.0, worst = -1.0;
    int n = 0;
    for (int i = 0; i < 20; ++i) {
      double ebar = 0.5 + 7.5 * i / 19.0;
      BoundRequest req{eps, ebar, 0.2, fhat, t, std::nullopt};
      double v = theorem2_bound(req).value;
      if (i > 0) worst = std::max(worst, prev - v);
      prev = v;
      ++n;
    }
    h.record("bound", "bound_monotone_energy", n, worst, 1e-10);
  }

  {
    // The oscillator-form bound equals its closed formula term by term.
    Rng rng = h.stream("oscillator_bound_formula");
    int n = h.capped(20);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      std::vector<double> omega{rng.uniform(0.5, 2.0)};
      double eps = rng.uniform(0.02, 0.5);
      double ebar = rng.uniform(0.5, 6.0);
      double hp = rng.uniform(0.0, 1.0);
      double e0 = 0.5 * omega[0];
      double t_max = (1.0 / eps) * std::min(1.0, std::sqrt(ebar / e0));
      double t = rng.uniform(0.2, 1.0) * t_max;
      BoundResult r = corollary5_bound(omega, eps, ebar, hp, t);
      double delta = hp + std::exp(-1.0) + std::log(2.0);
      double direct = eps * (1.0 + 4.0 * t) *
                          (oscillator_F_bar(omega, ebar / ((eps * t) * (eps * t))) + delta) +
                      2.0 * g_function(eps * t) + g_function(eps * (1.0 + 2.0 * t));
      worst = std::max(worst, std::abs(r.value - direct));
      worst = std::max(worst, std::abs(r.t_max - t_max));
    }
    h.record("bound", "oscillator_bound_formula", n, worst, num);
  }

  {
    // Sampled floor never exceeds the certified ceiling.
    Rng rng = h.stream("hp_estimate_order");
    int n = h.capped(10);
    double worst = -1.0;
    HpMaxEstimate ident = estimate_Hp_max(identity_channel(4), h.seed, 4);
    worst = std::max(worst, ident.lower - ident.upper);
    worst = std::max(worst, std::abs(ident.upper));
    HpMaxEstimate mix = estimate_Hp_max(mix_with_ground_channel(6, 0.3), h.seed, 4, std::log(2.0));
    worst = std::max(worst, mix.lower - mix.upper);
    worst = std::max(worst, mix.upper - std::log(2.0));
    for (int s = 0; s < n; ++s) {
      HpMaxEstimate est = estimate_Hp_max(random_channel(4, 4, 3, rng), h.seed + s, 4);
      worst = std::max(worst, est.lower - est.upper);
    }
    h.record("bound", "hp_estimate_order", n + 2, worst, num);
  }

  {
    // Log-weighted pinching family: norm series diverges, exponent series
    // certifies, and the certified ceiling sits where the series says.
    SummabilityFamily family;
    family.pinching_alpha = 0.5;
    family.truncation = 64;
    SummabilityReport report = corollary1_check(family, h.seed);
    double worst = 0.0;
    double ceiling = 0.0;
    for (const auto& cond : report.conditions) {
      if (cond.name == "b" && cond.holds) worst += 1.0;
      if (cond.name == "c" && !cond.holds) worst += 1.0;
      if (cond.name == "a" && !cond.holds) worst += 1.0;
      for (const auto& [key, val] : cond.numbers)
        if (cond.name == "c" && key == "gibbs_ceiling") ceiling = val;
    }
    if (!report.certified) worst += 1.0;
    if (std::abs(ceiling - 1.4977) > 0.01) worst += 1.0;
    h.record("bound", "pinching_summability_verdicts", 1, worst, 0.5);
  }
}

// ----------------------------------------------------------------------------
// roof: convex-roof estimator contracts.
// ----------------------------------------------------------------------------

void check_roof(Harness& h) {
  const double num = tol().num;

  {
    Rng rng = h.stream("roof_below_spectral_ensemble");
    int n = h.capped(12);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      KrausChannel phi = random_channel(4, 3, 2, rng);
      DensityOperator rho = random_state(4, rng, 2 + static_cast<int>(rng.below(2)));
      RoofEstimate roof = roof_estimate(phi, rho, h.seed + s, 0, 4);
      const EigenSystem& eig = rho.eigensystem();
      double spectral = 0.0;
      for (int i = 0; i < rho.dim(); ++i) {
        double lam = eig.values(i);
        if (lam <= 0.0) continue;
        spectral += lam * output_entropy(phi, DensityOperator::pure(eig.vectors.col(i)));
      }
      worst = std::max(worst, roof.value - spectral);
      worst = std::max(worst, roof.value - output_entropy(phi, rho));
    }
    h.record("roof", "roof_below_spectral_ensemble", n, worst, num);
  }

  {
    Rng rng = h.stream("roof_mixture_convexity");
    int n = h.capped(6);
    double worst = -1.0;
    KrausChannel phi = trace_out_second_channel(2, 2);
    for (int s = 0; s < n; ++s) {
      DensityOperator r1 = random_state(4, rng, 2), r2 = random_state(4, rng, 2);
      double p = rng.uniform(0.2, 0.8);
      DensityOperator mix =
          DensityOperator::from_matrix(p * r1.matrix() + (1.0 - p) * r2.matrix());
      double lhs = roof_estimate(phi, mix, h.seed + s, 0, 6).value;
      double rhs = p * roof_estimate(phi, r1, h.seed + s, 0, 6).value +
                   (1.0 - p) * roof_estimate(phi, r2, h.seed + s, 0, 6).value;
      worst = std::max(worst, lhs - rhs);
    }
    h.record("roof", "roof_mixture_convexity", n, worst, 2e-4);
  }

  {
    Rng rng = h.stream("pure_eof_matches_reduced_entropy");
    int n = h.capped(16);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      Vector v = random_pure_state(4, rng);
      DensityOperator rho = DensityOperator::pure(v);
      double reduced =
          von_neumann_entropy(DensityOperator::from_matrix(partial_trace_second(rho.matrix(), 2, 2)));
      worst = std::max(worst, std::abs(eof_estimate(rho, 2, 2, h.seed + s, 0, 2).value - reduced));
    }
    h.record("roof", "pure_eof_matches_reduced_entropy", n, worst, num);
  }

  {
    Vector bell = Vector::Zero(4);
    bell(0) = Complex(1.0 / std::sqrt(2.0), 0.0);
    bell(3) = Complex(1.0 / std::sqrt(2.0), 0.0);
    double value = eof_estimate(DensityOperator::pure(bell), 2, 2, h.seed, 0, 2).value;
    h.record("roof", "bell_state_eof", 1, std::abs(value - std::log(2.0)), tol().roof);
  }

  {
    Rng rng = h.stream("decomposition_reconstruction");
    int n = h.capped(40);
    double worst = -1.0;
    for (int s = 0; s < n; ++s) {
      int d = 2 + static_cast<int>(rng.below(4));
      int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
      DensityOperator rho = random_state(d, rng, rank);
      int m = rank + static_cast<int>(rng.below(3));
      EnsembleDecomposition ens =
          decomposition_from_isometry(rho, random_isometry(m, rank, rng));
      double sum = 0.0;
      for (double w : ens.weights) sum += w;
      worst = std::max(worst, std::abs(sum - rho.trace()));
    }
    h.record("roof", "decomposition_reconstruction", n, worst, num);
  }
}

}  // namespace

VerificationReport run_verification(const std::string& suite, std::uint64_t seed, int samples) {
  if (samples < 1) throw Error(ErrorKind::OutOfRange, "sample budget must be positive");
  bool all = suite == "all";
  if (!all && suite != "core" && suite != "channel" && suite != "energy" && suite != "bound" &&
      suite != "roof")
    throw Error(ErrorKind::OutOfRange, "unknown suite: " + suite);

  Harness h;
  h.seed = seed;
  h.samples = samples;
  if (all || suite == "core") check_core(h);
  if (all || suite == "channel") check_channel(h);
  if (all || suite == "energy") check_energy(h);
  if (all || suite == "bound") check_bound(h);
  if (all || suite == "roof") check_roof(h);

  VerificationReport report;
  report.suite = suite;
  report.seed = seed;
  report.samples = samples;
  report.checks = std::move(h.checks);
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
  return report;
}

std::string report_to_json(const VerificationReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("suite").value(report.suite);
  w.key("seed").value(static_cast<std::uint64_t>(report.seed));
  w.key("samples").value(report.samples);
  w.key("pass").value(report.pass);
  w.key("checks").begin_array();
  for (const CheckResult& c : report.checks) {
    w.begin_object();
    w.key("name").value(c.name);
    w.key("suite").value(c.suite);
    w.key("samples").value(c.samples);
    w.key("worst").value(c.worst);
    w.key("tolerance").value(c.tolerance);
    w.key("statistical").value(c.statistical);
    w.key("pass").value(c.pass);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

std::string report_to_csv(const VerificationReport& report) {
  std::string out = "name,suite,samples,worst,tolerance,statistical,pass\n";
  for (const CheckResult& c : report.checks) {
    out += c.name + ',' + c.suite + ',' + std::to_string(c.samples) + ',' +
           format_double(c.worst) + ',' + format_double(c.tolerance) + ',' +
           (c.statistical ? "true" : "false") + ',' + (c.pass ? "true" : "false") + '\n';
  }
  return out;
}

std::string report_to_table(const VerificationReport& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%-36s %-8s %7s %13s %11s %5s\n", "check", "suite", "samples",
                "worst", "tolerance", "ok");
  std::string out = line;
  for (const CheckResult& c : report.checks) {
    std::snprintf(line, sizeof line, "%-36s %-8s %7d %13.3e %11.1e %5s\n", c.name.c_str(),
                  c.suite.c_str(), c.samples, c.worst, c.tolerance,
                  c.pass ? (c.statistical ? "ok*" : "ok") : "FAIL");
    out += line;
  }
  std::snprintf(line, sizeof line, "%s: %zu checks, %s\n", report.suite.c_str(),
                report.checks.size(), report.pass ? "all passed" : "FAILURES PRESENT");
  out += line;
  return out;
}

}  // namespace qcent
