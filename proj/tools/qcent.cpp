// qcent -- command-line front end.
//
// Subcommands: entropy, channel info, gibbs, bound {audenaert, afw, theorem2,
// corollary5}, verify, roof.  All structured output goes through JsonWriter
// (17 significant digits), so identical invocations produce identical bytes.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcent/bounds.hpp"
#include "qcent/channel.hpp"
#include "qcent/energy.hpp"
#include "qcent/entropy.hpp"
#include "qcent/errors.hpp"
#include "qcent/io.hpp"
#include "qcent/roof.hpp"
#include "qcent/tolerances.hpp"
#include "qcent/verify.hpp"

namespace {

using namespace qcent;

void emit(const JsonWriter& w) { std::fputs((w.str() + "\n").c_str(), stdout); }

int cmd_entropy(const std::string& path, bool bits) {
  DensityOperator rho = load_state(path);
  double nats = von_neumann_entropy(rho);
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("nats").value(nats);
  if (bits) w.key("bits").value(nats / std::log(2.0));
  w.end_object();
  emit(w);
  return 0;
}

int cmd_channel_info(const std::string& path) {
  LoadedChannel loaded = load_channel(path);
  const KrausChannel& chan = loaded.channel;
  ValidationReport validation = chan.validate();
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("description").value(loaded.description);
  w.key("input_dim").value(chan.input_dim());
  w.key("output_dim").value(chan.output_dim());
  w.key("kind").value(chan.kind() == ChannelKind::Channel ? "channel" : "operation");
  w.key("kraus_count").value(chan.kraus_count());
  w.key("choi_rank").value(choi_rank(chan));
  w.key("normalization_deviation").value(validation.deviation);
  if (loaded.hp_ceiling) w.key("hp_ceiling").value(*loaded.hp_ceiling);
  if (loaded.family) {
    ClassDiagnosis diag = classify(*loaded.family);
    w.key("class").value(to_string(diag.verdict));
    w.key("class_rule").value(diag.rule);
    w.key("class_evidence").begin_object();
    for (const auto& [name, val] : diag.evidence) w.key(name).value(val);
    w.end_object();
  }
  w.end_object();
  emit(w);
  return 0;
}

int cmd_gibbs(const std::string& path, double energy) {
  EnergyProfile profile(load_hamiltonian(path));
  double lambda = gibbs_parameter(profile, energy);
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("energy").value(energy);
  w.key("lambda").value(lambda);
  w.key("entropy").value(F_H(profile, energy));
  w.key("partition").value(partition_function(profile, lambda));
  w.key("levels").value(profile.level_count());
  w.end_object();
  emit(w);
  return 0;
}

void emit_bound(const BoundResult& r) {
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("value").value(r.value);
  w.key("t_used").value(r.t_used);
  w.key("t_max").value(r.t_max);
  w.key("terms").begin_object();
  w.key("main").value(r.terms.main);
  w.key("g_small").value(r.terms.g_small);
  w.key("g_large").value(r.terms.g_large);
  w.end_object();
  w.key("fhat_increasing").value(r.flags.fhat_increasing);
  w.key("fhat_ratio_nonincreasing").value(r.flags.fhat_ratio_nonincreasing);
  w.end_object();
  emit(w);
}

void emit_scalar_bound(double v) {
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("value").value(v);
  w.end_object();
  emit(w);
}

int cmd_bound_theorem2(const std::string& spec_path, const std::string& chan_path, double eps,
                       std::optional<double> t, double energy, std::optional<double> hp_flag) {
  auto profile = std::make_shared<EnergyProfile>(load_hamiltonian(spec_path));
  LoadedChannel loaded = load_channel(chan_path);
  std::optional<double> hp = hp_flag ? hp_flag : loaded.hp_ceiling;
  if (!hp)
    throw Error(ErrorKind::NoUpperBound,
                "no certified Hp ceiling: pass --hp or use a generator channel");
  double ebar = energy - profile->ground_energy();
  if (!(ebar > 0.0))
    throw Error(ErrorKind::OutOfRange, "--E must exceed the ground energy");
  BoundRequest req{eps, ebar, *hp, fhat_star_handle(profile), t, std::nullopt};
  emit_bound(theorem2_bound(req));
  return 0;
}

int cmd_bound_corollary5(std::vector<double> omega, int modes, double eps, double energy,
                         std::optional<double> t, double hp) {
  if (omega.empty()) {
    if (modes < 1) throw Error(ErrorKind::OutOfRange, "need --omega or --modes");
    omega.assign(static_cast<std::size_t>(modes), 1.0);
  } else if (modes > 0 && static_cast<std::size_t>(modes) != omega.size()) {
    throw Error(ErrorKind::OutOfRange, "--modes disagrees with the --omega list");
  }
  double e0 = 0.0;
  for (double w : omega) e0 += 0.5 * w;
  double ebar = energy - e0;
  if (!(ebar > 0.0))
    throw Error(ErrorKind::OutOfRange, "--E must exceed the ground energy");
  emit_bound(corollary5_bound(omega, eps, ebar, hp, t));
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int samples,
               const std::string& format) {
  VerificationReport report = run_verification(suite, seed, samples);
  if (format == "json")
    std::fputs(report_to_json(report).c_str(), stdout);
  else if (format == "csv")
    std::fputs(report_to_csv(report).c_str(), stdout);
  else
    std::fputs(report_to_table(report).c_str(), stdout);
  return report.pass ? 0 : 1;
}

int cmd_roof(const std::string& chan_path, const std::string& state_path, int restarts,
             int members, std::uint64_t seed) {
  LoadedChannel loaded = load_channel(chan_path);
  DensityOperator rho = load_state(state_path);
  RoofEstimate est = roof_estimate(loaded.channel, rho, seed, members, restarts);
  JsonWriter w;
  w.begin_object();
  w.key("version").value("v1");
  w.key("value").value(est.value);
  w.key("members").value(est.members);
  w.key("restarts").value(est.restarts);
  w.key("weights").begin_array();
  for (double p : est.best.weights) w.value(p);
  w.end_array();
  w.end_object();
  emit(w);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  tol() = Tolerances::from_env();

  CLI::App app{"entropy, channels, and energy-constrained continuity bounds"};
  app.require_subcommand(1);

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "entropy of a state file, in nats");
  std::string state_path;
  bool bits = false;
  entropy_cmd->add_option("state", state_path, "state JSON file")->required();
  entropy_cmd->add_flag("--bits", bits, "also report the value in bits");

  // channel info
  auto* channel_cmd = app.add_subcommand("channel", "channel inspection");
  channel_cmd->require_subcommand(1);
  auto* info_cmd = channel_cmd->add_subcommand("info", "dimensions, rank, and class diagnosis");
  std::string chan_path;
  info_cmd->add_option("channel", chan_path, "channel JSON file")->required();

  // gibbs
  auto* gibbs_cmd = app.add_subcommand("gibbs", "Gibbs parameter and max entropy at an energy");
  std::string h_path;
  double gibbs_energy = 0.0;
  gibbs_cmd->add_option("--spec", h_path, "Hamiltonian JSON file")->required();
  gibbs_cmd->add_option("--energy", gibbs_energy, "mean-energy ceiling")->required();

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "continuity bounds");
  bound_cmd->require_subcommand(1);

  auto* aud_cmd = bound_cmd->add_subcommand("audenaert", "eps ln(d-1) + h2(eps)");
  int aud_dim = 2;
  double aud_eps = 0.0;
  aud_cmd->add_option("--dim", aud_dim, "dimension")->required();
  aud_cmd->add_option("--eps", aud_eps, "trace-distance radius")->required();

  auto* afw_cmd = bound_cmd->add_subcommand("afw", "eps * range + g(eps)");
  double afw_range = 0.0, afw_eps = 0.0;
  afw_cmd->add_option("--range", afw_range, "entropy range cap")->required();
  afw_cmd->add_option("--eps", afw_eps, "trace-distance radius")->required();

  auto* th2_cmd = bound_cmd->add_subcommand("theorem2", "energy-constrained bound");
  std::string th2_spec, th2_chan;
  double th2_eps = 0.0, th2_energy = 0.0;
  std::optional<double> th2_t, th2_hp;
  th2_cmd->add_option("--spec", th2_spec, "Hamiltonian JSON file")->required();
  th2_cmd->add_option("--chan", th2_chan, "channel JSON file")->required();
  th2_cmd->add_option("--eps", th2_eps, "trace-distance radius")->required();
  th2_cmd->add_option("--E", th2_energy, "energy ceiling (absolute)")->required();
  th2_cmd->add_option("--t", th2_t, "free parameter; omitted = minimized");
  th2_cmd->add_option("--hp", th2_hp, "certified pure-output entropy ceiling");

  auto* c5_cmd = bound_cmd->add_subcommand("corollary5", "oscillator-form bound");
  std::vector<double> c5_omega;
  int c5_modes = 0;
  double c5_eps = 0.0, c5_energy = 0.0, c5_hp = 0.0;
  std::optional<double> c5_t;
  c5_cmd->add_option("--omega", c5_omega, "mode quanta, comma separated")->delimiter(',');
  c5_cmd->add_option("--modes", c5_modes, "mode count (unit quanta when --omega is absent)");
  c5_cmd->add_option("--eps", c5_eps, "trace-distance radius")->required();
  c5_cmd->add_option("--E", c5_energy, "energy ceiling (absolute)")->required();
  c5_cmd->add_option("--t", c5_t, "free parameter; omitted = minimized");
  c5_cmd->add_option("--hp", c5_hp, "certified pure-output entropy ceiling");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the inequality harness");
  std::string suite = "all", format = "json";
  std::uint64_t seed = 0;
  int samples = 100;
  verify_cmd->add_option("--suite", suite, "core|channel|energy|bound|roof|all");
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--samples", samples, "per-check sample budget");
  verify_cmd->add_option("--format", format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // roof
  auto* roof_cmd = app.add_subcommand("roof", "convex-roof estimate of the output entropy");
  std::string roof_chan, roof_state;
  int roof_restarts = 32, roof_members = 0;
  std::uint64_t roof_seed = 0;
  roof_cmd->add_option("--chan", roof_chan, "channel JSON file")->required();
  roof_cmd->add_option("--state", roof_state, "state JSON file")->required();
  roof_cmd->add_option("--restarts", roof_restarts, "local-search restarts");
  roof_cmd->add_option("--members", roof_members, "ensemble size (0 = rank^2 capped at 16)");
  roof_cmd->add_option("--seed", roof_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (entropy_cmd->parsed()) return cmd_entropy(state_path, bits);
    if (channel_cmd->parsed()) return cmd_channel_info(chan_path);
    if (gibbs_cmd->parsed()) return cmd_gibbs(h_path, gibbs_energy);
    if (bound_cmd->parsed()) {
      if (aud_cmd->parsed()) {
        emit_scalar_bound(audenaert_bound(aud_dim, aud_eps));
        return 0;
      }
      if (afw_cmd->parsed()) {
        emit_scalar_bound(afw_bound(afw_range, afw_eps));
        return 0;
      }
      if (th2_cmd->parsed())
        return cmd_bound_theorem2(th2_spec, th2_chan, th2_eps, th2_t, th2_energy, th2_hp);
      if (c5_cmd->parsed())
        return cmd_bound_corollary5(c5_omega, c5_modes, c5_eps, c5_energy, c5_t, c5_hp);
    }
    if (verify_cmd->parsed()) return cmd_verify(suite, seed, samples, format);
    if (roof_cmd->parsed()) return cmd_roof(roof_chan, roof_state, roof_restarts, roof_members,
                                            roof_seed);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
