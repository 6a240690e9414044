// energy.hpp -- Hamiltonian spectra, Gibbs states, and the entropy-vs-energy
// envelope machinery used by the continuity bounds.
//
// Conventions.  A spectrum is a nondecreasing list of energy levels; E0 is
// the ground energy, m0 its multiplicity.  F_H(E) is the maximal entropy
// among states with mean energy <= E, attained by the Gibbs state gamma(E);
// F_bar(E) = F_H(E + E0) is its shifted version on [0, inf).  F_hat_star is
// the minimal envelope above F_bar with:  strictly increasing, and
// F_hat(E)/sqrt(E) nonincreasing.  All entropies in nats.
//
// Oscillator spectra are materialized up to a cutoff for everything that
// needs an actual finite basis (partition sums, Gibbs states, F_H).  The
// F_hat_star envelope instead evaluates the oscillator free-energy curve in
// closed form: the envelope's job is to dominate F_bar at arbitrarily large
// arguments, where a truncated basis would flatten out and lie.
#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qcent/entropy.hpp"

namespace qcent {

enum class SpectrumKind { Explicit, Oscillator };

// Tail models certify what lies beyond the materialized levels:
//   Finite       -- nothing; the list is the whole spectrum.
//   GeometricGap -- levels continue with gaps >= gap (partition tails only).
enum class TailModel { Finite, GeometricGap };

struct HamiltonianSpectrum {
  SpectrumKind kind = SpectrumKind::Explicit;

  // Explicit: levels sorted on construction.
  std::vector<double> levels;
  TailModel tail = TailModel::Finite;
  double gap = 0.0;  // 0 = infer from the last two distinct levels

  // Oscillator: level set { sum_i w_i (n_i + 1/2) }, materialized up to cutoff.
  std::vector<double> hbar_omega;
  double cutoff = 0.0;  // <= 0 = default policy: E0 + 48 * max(w)

  static HamiltonianSpectrum explicit_levels(std::vector<double> levels,
                                             TailModel tail = TailModel::Finite,
                                             double gap = 0.0);
  static HamiltonianSpectrum oscillator(std::vector<double> hbar_omega, double cutoff = 0.0);
};

// Materialized level list, nondecreasing.  Enumeration is capped; blowing
// the cap is OutOfRange, not a silent truncation.
std::vector<double> generate_levels(const HamiltonianSpectrum& spec);

class EnergyProfile {
 public:
  explicit EnergyProfile(HamiltonianSpectrum spec);

  const HamiltonianSpectrum& spectrum() const { return spec_; }
  const std::vector<double>& levels() const { return levels_; }
  int level_count() const { return static_cast<int>(levels_.size()); }
  double ground_energy() const { return levels_.front(); }
  int ground_multiplicity() const { return m0_; }
  // Mean energy of the uniform state: the lambda -> 0 supremum of Gibbs
  // mean energies on the materialized basis.
  double mean_sup() const { return mean_sup_; }
  bool is_oscillator() const { return spec_.kind == SpectrumKind::Oscillator; }

  // lambda(E) on the materialized basis, cached per E (write-once keys).
  double gibbs_lambda(double energy) const;

 private:
  HamiltonianSpectrum spec_;
  std::vector<double> levels_;
  int m0_ = 1;
  double mean_sup_ = 0.0;
  mutable std::map<double, double> lambda_cache_;
  mutable std::unique_ptr<std::mutex> cache_mutex_;
};

// sum_k exp(-lambda E_k) over materialized levels.  The unmaterialized tail
// must certify below tol().tail relative, else TailNotControlled.
double partition_function(const EnergyProfile& profile, double lambda);

// lambda(E): unique solution of mean energy = E.  Domain is the open
// interval (E0, mean_sup); both ends raise OutOfRange (at the top the
// parameter would collapse to 0 and the problem is ill-conditioned).
double gibbs_parameter(const EnergyProfile& profile, double energy);

// Gibbs state, diagonal in the level basis.  E = E0 is served exactly as
// the uniform state on the ground multiplicity.
DensityOperator gibbs_state(const EnergyProfile& profile, double energy);

// Max entropy at mean energy <= E.  Plateau: for E >= mean_sup the uniform
// state wins and F_H = ln(level count), reported exactly.
double F_H(const EnergyProfile& profile, double energy);

// F_bar(E) = F_H(E + E0), domain E >= 0.
double F_bar(const EnergyProfile& profile, double energy);

// sqrt(E) * sup_{E' >= E} F_bar(E') / sqrt(E'), sup taken over a geometric
// grid (ratio 1.25, budget 200 points, early stop after 10 consecutive
// decreases) plus a golden-section polish around the best grid point.
// Throws HorizonNotReached when the budget ends without the decrease
// certificate.  F_hat_star(0) is the limit value F_bar(0).
double F_hat_star(const EnergyProfile& profile, double energy);

// Ratio sum E_k^2 / sum E_k E_j over ordered level pairs with
// E_k + E_j <= energy.  Materializes its own level list up to energy - E0.
// EmptyIndexSet when no pair qualifies or the denominator vanishes.
// For l-mode unit oscillators the ratio converges to 1 + 1/l from above;
// it sits within 5% of the limit once energy >= 40.
double bd_ratio(const HamiltonianSpectrum& spec, double energy);

// Closed-form envelope for an oscillator with quanta omega:
//   l * ln((E + 2 E0) / (l E*)) + l,   E* = (prod omega)^(1/l).
// Dominates the oscillator F_bar everywhere and satisfies both envelope
// conditions analytically.
double oscillator_F_bar(const std::vector<double>& omega, double energy);

// ----------------------------------------------------------------------------
// Envelope handles: what the bound formulas actually consume.
// ----------------------------------------------------------------------------

struct FhatHandle {
  std::string name;
  double at_zero = 0.0;
  std::function<double(double)> eval_positive;  // E > 0 only
  // F-cond-2 audit outcome; analytic instances are born certified.
  bool increasing = true;
  bool ratio_nonincreasing = true;

  double value(double energy) const;
};

FhatHandle fhat_star_handle(std::shared_ptr<const EnergyProfile> profile);
FhatHandle fhat_oscillator_handle(std::vector<double> omega);

// Tabulated handle: audited for the envelope conditions at the sample
// points (OutOfRange if they fail), linear interpolation inside the table,
// sqrt(E)-proportional extension outside it.
FhatHandle fhat_tabulated(std::vector<std::array<double, 2>> table);

// Smallest d with ln d > F_hat(0).
int base_dim(const FhatHandle& fhat);

// gamma(d) = the energy where F_hat reaches ln d; needs d >= base_dim
// (BelowD0 otherwise), OutOfRange when F_hat never gets there.
double gamma_of_d(const FhatHandle& fhat, int d);

}  // namespace qcent
