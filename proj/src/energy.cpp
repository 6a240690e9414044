#include "qcent/energy.hpp"

#include <algorithm>
#include <cmath>

#include "qcent/errors.hpp"
#include "qcent/tolerances.hpp"

namespace qcent {

namespace {

constexpr std::size_t kLevelBudget = 2'000'000;

struct ThermalSums {
  double weight;  // sum_k exp(-lambda (E_k - E0))
  double mean;    // mean energy at this lambda
};

// Shifted weights keep every exponent <= 0, so nothing overflows and the
// ground level always contributes 1.
ThermalSums thermal_sums(const std::vector<double>& levels, double lambda) {
  const double e0 = levels.front();
  double w = 0.0, ew = 0.0;
  for (double e : levels) {
    double x = std::exp(-lambda * (e - e0));
    w += x;
    ew += e * x;
  }
  return {w, ew / w};
}

// lambda(E) by bracket expansion + bisection on the strictly decreasing
// mean-energy curve.  Caller guarantees E0 < energy < mean_sup.
double solve_lambda(const std::vector<double>& levels, double energy) {
  const double e0 = levels.front();
  const double scale = std::max(std::abs(energy), energy - e0);

  double lo = 0.0;  // mean(lo) > energy (lambda -> 0 gives mean_sup)
  double hi = 1.0;
  while (thermal_sums(levels, hi).mean > energy) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9)
      throw Error(ErrorKind::NoConvergence, "gibbs parameter bracket expansion failed");
  }

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 500; ++it) {
    mid = 0.5 * (lo + hi);
    double mean = thermal_sums(levels, mid).mean;
    if (std::abs(mean - energy) <= tol().root * scale) return mid;
    (mean > energy ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  if (std::abs(thermal_sums(levels, mid).mean - energy) > 10.0 * tol().root * scale)
    throw Error(ErrorKind::NoConvergence, "gibbs parameter bisection stalled");
  return mid;
}

// Closed-form pieces for the full (untruncated) oscillator.
double osc_ground(const std::vector<double>& omega) {
  double s = 0.0;
  for (double w : omega) s += w;
  return 0.5 * s;
}

double osc_mean_closed(const std::vector<double>& omega, double lambda) {
  double m = osc_ground(omega);
  for (double w : omega) m += w / std::expm1(lambda * w);
  return m;
}

// Entropy of the untruncated Gibbs state at mean excess energy ebar:
// H = lambda * ebar - sum ln(1 - e^{-lambda w}).
double osc_fbar_closed(const std::vector<double>& omega, double ebar) {
  if (ebar <= 0.0) return 0.0;
  const double e0 = osc_ground(omega);
  auto mean_excess = [&](double lambda) { return osc_mean_closed(omega, lambda) - e0; };

  double lo = 1.0, hi = 1.0;
  while (mean_excess(lo) < ebar) {
    lo *= 0.5;
    if (lo < 1e-300) throw Error(ErrorKind::NoConvergence, "oscillator bracket underflow");
  }
  while (mean_excess(hi) > ebar) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorKind::NoConvergence, "oscillator bracket overflow");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 500; ++it) {
    mid = 0.5 * (lo + hi);
    double m = mean_excess(mid);
    if (std::abs(m - ebar) <= tol().root * ebar) break;
    (m > ebar ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  double h = mid * ebar;
  for (double w : omega) h -= std::log1p(-std::exp(-mid * w));
  return h;
}

// The envelope works off the curve that stays truthful at large arguments:
// closed form for oscillators, the materialized (plateaued) curve otherwise.
double envelope_fbar(const EnergyProfile& p, double ebar) {
  if (p.is_oscillator()) return osc_fbar_closed(p.spectrum().hbar_omega, ebar);
  return F_bar(p, ebar);
}

double envelope_fbar_zero(const EnergyProfile& p) {
  if (p.is_oscillator()) return 0.0;  // nondegenerate ground by construction
  return std::log(static_cast<double>(p.ground_multiplicity()));
}

}  // namespace

// ----------------------------------------------------------------------------
// Spectra.
// ----------------------------------------------------------------------------

HamiltonianSpectrum HamiltonianSpectrum::explicit_levels(std::vector<double> levels,
                                                         TailModel tail, double gap) {
  if (levels.empty()) throw Error(ErrorKind::OutOfRange, "spectrum needs at least one level");
  for (double e : levels)
    if (!std::isfinite(e)) throw Error(ErrorKind::OutOfRange, "levels must be finite");
  if (gap < 0.0) throw Error(ErrorKind::OutOfRange, "tail gap must be nonnegative");
  std::sort(levels.begin(), levels.end());
  HamiltonianSpectrum s;
  s.kind = SpectrumKind::Explicit;
  s.levels = std::move(levels);
  s.tail = tail;
  s.gap = gap;
  return s;
}

HamiltonianSpectrum HamiltonianSpectrum::oscillator(std::vector<double> hbar_omega,
                                                    double cutoff) {
  if (hbar_omega.empty()) throw Error(ErrorKind::OutOfRange, "oscillator needs >= 1 mode");
  double wmax = 0.0;
  for (double w : hbar_omega) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorKind::OutOfRange, "oscillator quanta must be positive");
    wmax = std::max(wmax, w);
  }
  HamiltonianSpectrum s;
  s.kind = SpectrumKind::Oscillator;
  double e0 = osc_ground(hbar_omega);
  s.cutoff = cutoff > 0.0 ? cutoff : e0 + 48.0 * wmax;
  if (s.cutoff < e0)
    throw Error(ErrorKind::OutOfRange, "cutoff lies below the ground energy");
  s.hbar_omega = std::move(hbar_omega);
  return s;
}

std::vector<double> generate_levels(const HamiltonianSpectrum& spec) {
  if (spec.kind == SpectrumKind::Explicit) return spec.levels;

  // Occupation sums sum_i n_i w_i <= cutoff - E0, built mode by mode.
  const double budget = spec.cutoff - osc_ground(spec.hbar_omega);
  std::vector<double> sums{0.0};
  for (double w : spec.hbar_omega) {
    std::vector<double> next;
    for (double s : sums)
      for (double v = s; v <= budget + 1e-12 * std::max(1.0, budget); v += w) {
        next.push_back(v);
        if (next.size() > kLevelBudget)
          throw Error(ErrorKind::OutOfRange, "level enumeration exceeds the budget");
      }
    sums = std::move(next);
  }
  const double e0 = osc_ground(spec.hbar_omega);
  for (double& s : sums) s += e0;
  std::sort(sums.begin(), sums.end());
  return sums;
}

EnergyProfile::EnergyProfile(HamiltonianSpectrum spec)
    : spec_(std::move(spec)), cache_mutex_(std::make_unique<std::mutex>()) {
  levels_ = generate_levels(spec_);
  if (levels_.empty()) throw Error(ErrorKind::OutOfRange, "no levels below the cutoff");
  m0_ = 0;
  double sum = 0.0;
  for (double e : levels_) {
    if (e == levels_.front()) ++m0_;
    sum += e;
  }
  mean_sup_ = sum / static_cast<double>(levels_.size());
}

double EnergyProfile::gibbs_lambda(double energy) const {
  if (energy <= ground_energy() || energy >= mean_sup_)
    throw Error(ErrorKind::OutOfRange, "gibbs parameter needs E in (E0, mean_sup)");
  {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    auto it = lambda_cache_.find(energy);
    if (it != lambda_cache_.end()) return it->second;
  }
  double lambda = solve_lambda(levels_, energy);
  {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    lambda_cache_.emplace(energy, lambda);  // idempotent: same key, same value
  }
  return lambda;
}

// ----------------------------------------------------------------------------
// Partition function with tail certificates.
// ----------------------------------------------------------------------------

double partition_function(const EnergyProfile& profile, double lambda) {
  const auto& spec = profile.spectrum();
  if (spec.kind == SpectrumKind::Oscillator || spec.tail == TailModel::GeometricGap) {
    if (!(lambda > 0.0))
      throw Error(ErrorKind::OutOfRange, "tail control needs lambda > 0");
  }

  double z = 0.0;
  for (double e : profile.levels()) z += std::exp(-lambda * e);

  double tail = 0.0;
  if (spec.kind == SpectrumKind::Oscillator) {
    // Levels above the cutoff, grouped by total quanta n: a level with n
    // quanta has energy >= max(C, E0 + n w_min), and there are at most
    // binom(n + l - 1, l - 1) of them; n starts at ceil((C - E0) / w_max).
    const auto& w = spec.hbar_omega;
    const double w_min = *std::min_element(w.begin(), w.end());
    const double w_max = *std::max_element(w.begin(), w.end());
    const double e0 = osc_ground(w);
    const auto l = w.size();
    double n0 = std::ceil((spec.cutoff - e0) / w_max);
    double count = 1.0;
    for (std::size_t j = 1; j < l; ++j) count *= (n0 + l - j) / j;  // binom(n0+l-1, l-1)
    bool converged = false;
    for (double n = n0; n < n0 + 200000; ++n) {
      double term =
          count * std::exp(-lambda * std::max(spec.cutoff, e0 + n * w_min));
      tail += term;
      if (term < 1e-18 * (tail + z)) {
        converged = true;
        break;
      }
      count *= (n + l) / (n + 1.0);
    }
    if (!converged)
      throw Error(ErrorKind::TailNotControlled, "tail series did not converge");
  } else if (spec.tail == TailModel::GeometricGap) {
    double gap = spec.gap;
    if (gap <= 0.0 && profile.level_count() >= 2) {
      // Infer from the last two distinct levels.
      const auto& lv = profile.levels();
      for (std::size_t i = lv.size() - 1; i > 0; --i)
        if (lv[i] > lv[i - 1]) {
          gap = lv[i] - lv[i - 1];
          break;
        }
    }
    if (gap <= 0.0)
      throw Error(ErrorKind::TailNotControlled, "no usable gap for the geometric tail");
    double r = std::exp(-lambda * gap);
    tail = std::exp(-lambda * profile.levels().back()) * r / (1.0 - r);
  }

  if (tail > tol().tail * z)
    throw Error(ErrorKind::TailNotControlled, "truncation tail exceeds the certificate");
  return z;
}

// ----------------------------------------------------------------------------
// Gibbs machinery.
// ----------------------------------------------------------------------------

double gibbs_parameter(const EnergyProfile& profile, double energy) {
  return profile.gibbs_lambda(energy);
}

DensityOperator gibbs_state(const EnergyProfile& profile, double energy) {
  const int n = profile.level_count();
  RealVector probs = RealVector::Zero(n);
  if (energy == profile.ground_energy()) {
    // Exact lambda -> inf limit: uniform on the ground multiplicity.
    for (int k = 0; k < profile.ground_multiplicity(); ++k)
      probs(k) = 1.0 / profile.ground_multiplicity();
    return DensityOperator::diagonal(probs);
  }
  double lambda = profile.gibbs_lambda(energy);
  const auto& lv = profile.levels();
  double w = 0.0;
  for (int k = 0; k < n; ++k) {
    probs(k) = std::exp(-lambda * (lv[k] - lv[0]));
    w += probs(k);
  }
  probs /= w;
  return DensityOperator::diagonal(probs);
}

double F_H(const EnergyProfile& profile, double energy) {
  if (energy < profile.ground_energy())
    throw Error(ErrorKind::OutOfRange, "no states below the ground energy");
  if (energy == profile.ground_energy())
    return std::log(static_cast<double>(profile.ground_multiplicity()));
  if (energy >= profile.mean_sup())
    return std::log(static_cast<double>(profile.level_count()));  // uniform plateau

  // Legendre form at the target energy: a lambda mismatch from the bisection
  // only enters at second order here, where the achieved mean would enter at
  // first order.
  double lambda = profile.gibbs_lambda(energy);
  ThermalSums s = thermal_sums(profile.levels(), lambda);
  return lambda * (energy - profile.ground_energy()) + std::log(s.weight);
}

double F_bar(const EnergyProfile& profile, double energy) {
  if (energy < 0.0) throw Error(ErrorKind::OutOfRange, "F_bar needs E >= 0");
  return F_H(profile, energy + profile.ground_energy());
}

// ----------------------------------------------------------------------------
// Envelope.
// ----------------------------------------------------------------------------

double F_hat_star(const EnergyProfile& profile, double energy) {
  if (energy < 0.0) throw Error(ErrorKind::OutOfRange, "envelope needs E >= 0");
  if (energy == 0.0) return envelope_fbar_zero(profile);

  auto ratio = [&](double x) { return envelope_fbar(profile, x) / std::sqrt(x); };

  // Geometric scan; early out once the curve has decayed for 10 points in
  // a row, which certifies the sup is behind us.
  double best = ratio(energy), best_x = energy;
  double prev = best;
  int decreases = 0;
  bool certified = false;
  double x = energy;
  for (int used = 1; used < 200; ++used) {
    x *= 1.25;
    double s = ratio(x);
    if (s > best) {
      best = s;
      best_x = x;
    }
    decreases = (s <= prev) ? decreases + 1 : 0;
    prev = s;
    if (decreases >= 10) {
      certified = true;
      break;
    }
  }
  if (!certified)
    throw Error(ErrorKind::HorizonNotReached, "no decay certificate within the scan budget");

  // Golden-section polish around the best grid point; the scan alone is too
  // coarse to keep the envelope monotone across off-grid arguments.
  double a = std::max(energy, best_x / 1.25);
  double b = best_x * 1.25;
  const double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = ratio(x1), f2 = ratio(x2);
  for (int it = 0; it < 90 && (b - a) > 1e-14 * b; ++it) {
    best = std::max(best, std::max(f1, f2));
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = ratio(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = ratio(x1);
    }
  }
  best = std::max(best, std::max(f1, f2));
  return std::sqrt(energy) * best;
}

double bd_ratio(const HamiltonianSpectrum& spec, double energy) {
  // Ordered pairs (k, j) with E_k + E_j <= energy; only levels up to
  // energy - E0 can participate.
  std::vector<double> lv;
  if (spec.kind == SpectrumKind::Explicit) {
    double e0 = *std::min_element(spec.levels.begin(), spec.levels.end());
    for (double e : spec.levels)
      if (e <= energy - e0) lv.push_back(e);
    std::sort(lv.begin(), lv.end());
  } else {
    double e0 = osc_ground(spec.hbar_omega);
    if (energy - e0 < e0) throw Error(ErrorKind::EmptyIndexSet, "no admissible level pair");
    HamiltonianSpectrum trimmed = spec;
    trimmed.cutoff = energy - e0;
    lv = generate_levels(trimmed);
  }
  if (lv.empty()) throw Error(ErrorKind::EmptyIndexSet, "no admissible level pair");

  std::vector<double> prefix(lv.size() + 1, 0.0);
  for (std::size_t i = 0; i < lv.size(); ++i) prefix[i + 1] = prefix[i] + lv[i];

  double up = 0.0, dn = 0.0;
  for (double e : lv) {
    auto it = std::upper_bound(lv.begin(), lv.end(), energy - e);
    auto count = static_cast<std::size_t>(it - lv.begin());
    if (count == 0) continue;
    up += e * e * static_cast<double>(count);
    dn += e * prefix[count];
  }
  if (dn <= 0.0)
    throw Error(ErrorKind::EmptyIndexSet, "no admissible pair with positive energies");
  return up / dn;
}

double oscillator_F_bar(const std::vector<double>& omega, double energy) {
  if (omega.empty()) throw Error(ErrorKind::OutOfRange, "oscillator needs >= 1 mode");
  if (energy < 0.0) throw Error(ErrorKind::OutOfRange, "oscillator_F_bar needs E >= 0");
  const auto l = static_cast<double>(omega.size());
  double log_estar = 0.0;
  for (double w : omega) {
    if (!(w > 0.0)) throw Error(ErrorKind::OutOfRange, "oscillator quanta must be positive");
    log_estar += std::log(w) / l;
  }
  double e0 = osc_ground(omega);
  return l * (std::log(energy + 2.0 * e0) - std::log(l) - log_estar) + l;
}

// ----------------------------------------------------------------------------
// Handles.
// ----------------------------------------------------------------------------

double FhatHandle::value(double energy) const {
  if (energy < 0.0) throw Error(ErrorKind::OutOfRange, "envelope handles need E >= 0");
  if (energy == 0.0) return at_zero;
  return eval_positive(energy);
}

FhatHandle fhat_star_handle(std::shared_ptr<const EnergyProfile> profile) {
  FhatHandle h;
  h.name = profile->is_oscillator() ? "fhat_star(oscillator)" : "fhat_star(explicit)";
  h.at_zero = envelope_fbar_zero(*profile);
  h.eval_positive = [profile](double e) { return F_hat_star(*profile, e); };
  return h;
}

FhatHandle fhat_oscillator_handle(std::vector<double> omega) {
  FhatHandle h;
  h.name = "oscillator_F_bar";
  h.at_zero = oscillator_F_bar(omega, 0.0);
  h.eval_positive = [omega = std::move(omega)](double e) { return oscillator_F_bar(omega, e); };
  return h;
}

FhatHandle fhat_tabulated(std::vector<std::array<double, 2>> table) {
  if (table.empty()) throw Error(ErrorKind::OutOfRange, "empty envelope table");
  std::sort(table.begin(), table.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i][0] < 0.0 || table[i][1] < 0.0)
      throw Error(ErrorKind::OutOfRange, "envelope table needs nonnegative entries");
    if (i > 0) {
      if (table[i][0] == table[i - 1][0])
        throw Error(ErrorKind::OutOfRange, "duplicate energy in envelope table");
      if (table[i][1] <= table[i - 1][1])
        throw Error(ErrorKind::OutOfRange, "envelope table is not strictly increasing");
      if (table[i - 1][0] > 0.0) {
        double r_prev = table[i - 1][1] / std::sqrt(table[i - 1][0]);
        double r_here = table[i][1] / std::sqrt(table[i][0]);
        if (r_here > r_prev * (1.0 + 1e-12))
          throw Error(ErrorKind::OutOfRange, "envelope table ratio is not nonincreasing");
      }
    }
  }

  FhatHandle h;
  h.name = "tabulated";
  h.at_zero = table.front()[0] == 0.0 ? table.front()[1] : 0.0;
  h.eval_positive = [table = std::move(table)](double e) {
    if (e <= table.front()[0]) {
      // sqrt-proportional head keeps both envelope conditions.
      if (table.front()[0] == 0.0) return table.front()[1];
      return table.front()[1] * std::sqrt(e / table.front()[0]);
    }
    if (e >= table.back()[0])
      return table.back()[1] * std::sqrt(e / table.back()[0]);
    auto it = std::lower_bound(table.begin(), table.end(), e,
                               [](const auto& row, double v) { return row[0] < v; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    double t = (e - lo[0]) / (hi[0] - lo[0]);
    return lo[1] + t * (hi[1] - lo[1]);
  };
  return h;
}

int base_dim(const FhatHandle& fhat) {
  double f0 = fhat.at_zero;
  int d = std::max(1, static_cast<int>(std::ceil(std::exp(f0) - 1e-12)));
  while (std::log(static_cast<double>(d)) <= f0) ++d;
  return d;
}

double gamma_of_d(const FhatHandle& fhat, int d) {
  int d0 = base_dim(fhat);
  if (d < d0) throw Error(ErrorKind::BelowD0, "d below the base dimension of the envelope");
  const double target = std::log(static_cast<double>(d));

  double hi = 1.0;
  for (int guard = 0; fhat.value(hi) < target; ++guard) {
    hi *= 2.0;
    if (guard > 200)
      throw Error(ErrorKind::OutOfRange, "envelope never reaches ln d");
  }
  double lo = 0.0;  // value(0) = at_zero < ln d0 <= target
  for (int it = 0; it < 200 && hi - lo > tol().root * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (fhat.value(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qcent
