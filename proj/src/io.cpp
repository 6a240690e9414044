#include "qcent/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qcent/errors.hpp"

namespace qcent {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json parse_root(const std::string& text, const char* what, const char* type) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) bad(std::string(what) + ": malformed JSON");
  if (j.value("version", std::string()) != "v1")
    bad(std::string(what) + ": expected \"version\": \"v1\"");
  if (j.contains("type") && j["type"] != type)
    bad(std::string(what) + ": wrong \"type\" field");
  return j;
}

double parse_number(const json& e, const char* what) {
  if (!e.is_number()) bad(std::string(what) + ": expected a number");
  return e.get<double>();
}

Complex parse_entry(const json& e, const char* what) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (!e.is_array() || e.size() != 2)
    bad(std::string(what) + ": matrix entries are [re, im] pairs or plain numbers");
  return Complex(parse_number(e[0], what), parse_number(e[1], what));
}

Matrix parse_matrix(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
    bad(std::string(what) + ": expected a matrix (array of rows)");
  const std::size_t nrows = rows.size();
  const std::size_t ncols = rows[0].size();
  Matrix m(static_cast<int>(nrows), static_cast<int>(ncols));
  for (std::size_t i = 0; i < nrows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols)
      bad(std::string(what) + ": ragged matrix rows");
    for (std::size_t j = 0; j < ncols; ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = parse_entry(rows[i][j], what);
  }
  return m;
}

Vector parse_cvector(const json& entries, const char* what) {
  if (!entries.is_array() || entries.empty()) bad(std::string(what) + ": expected a vector");
  Vector v(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    v(static_cast<int>(i)) = parse_entry(entries[i], what);
  return v;
}

std::vector<double> parse_rvector(const json& entries, const char* what) {
  if (!entries.is_array() || entries.empty()) bad(std::string(what) + ": expected a list of numbers");
  std::vector<double> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(parse_number(e, what));
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double require_param(const json& params, const char* name, const char* what) {
  if (!params.contains(name)) bad(std::string(what) + ": missing param \"" + name + "\"");
  return parse_number(params[name], what);
}

LoadedChannel from_generator(const json& j) {
  const std::string name = j["generator"].get<std::string>();
  json params = j.value("params", json::object());
  auto dim_of = [&](const char* what) {
    double d = require_param(params, "dim", what);
    if (d < 1 || d != std::floor(d)) bad(std::string(what) + ": dim must be a positive integer");
    return static_cast<int>(d);
  };

  if (name == "identity") {
    int dim = dim_of("identity");
    return {identity_channel(dim), name, ChannelFamily{FamilyKind::FiniteChoiRank, 0, 0, dim, {}},
            0.0};
  }
  if (name == "dephasing") {
    int dim = dim_of("dephasing");
    return {dephasing_channel(dim), name,
            ChannelFamily{FamilyKind::FiniteDimOutput, 0, 0, dim, {}},
            std::log(static_cast<double>(dim))};
  }
  if (name == "mix_with_pure" || name == "mix_with_ground") {
    int dim = dim_of(name.c_str());
    double p = require_param(params, "p", name.c_str());
    // (1-p) rho + p |0><0| has rank <= 2 on pure inputs, whence the ln 2 cap.
    return {mix_with_ground_channel(dim, p), name,
            ChannelFamily{FamilyKind::MixtureWithPure, 0, p, dim, {}}, std::log(2.0)};
  }
  if (name == "depolarizing") {
    int dim = dim_of("depolarizing");
    return {depolarizing_channel(dim), name,
            ChannelFamily{FamilyKind::FiniteDimOutput, 0, 0, dim, {}},
            std::log(static_cast<double>(dim))};
  }
  if (name == "pinching_family" || name == "example1_pinching") {
    double alpha = require_param(params, "alpha", "pinching_family");
    double levels = require_param(params, "levels", "pinching_family");
    if (levels < 2 || levels != std::floor(levels))
      bad("pinching_family: levels must be an integer >= 2");
    return {pinching_family_channel(alpha, static_cast<int>(levels)), "pinching_family",
            ChannelFamily{FamilyKind::PinchingFamily, alpha, 0, static_cast<int>(levels), {}},
            std::nullopt};
  }
  bad("unknown generator \"" + name + "\"");
}

}  // namespace

DensityOperator parse_state(const std::string& text) {
  json j = parse_root(text, "state", "state");
  if (j.contains("matrix")) return DensityOperator::from_matrix(parse_matrix(j["matrix"], "state"));
  if (j.contains("diagonal")) {
    std::vector<double> p = parse_rvector(j["diagonal"], "state");
    RealVector v = Eigen::Map<const RealVector>(p.data(), static_cast<int>(p.size()));
    return DensityOperator::diagonal(v);
  }
  if (j.contains("pure")) {
    double w = j.contains("weight") ? parse_number(j["weight"], "state") : 1.0;
    return DensityOperator::pure(parse_cvector(j["pure"], "state"), w);
  }
  bad("state: need one of \"matrix\", \"diagonal\", \"pure\"");
}

DensityOperator load_state(const std::string& path) { return parse_state(slurp(path)); }

LoadedChannel parse_channel(const std::string& text) {
  json j = parse_root(text, "channel", "channel");
  if (j.contains("generator")) return from_generator(j);
  if (!j.contains("kraus")) bad("channel: need \"kraus\" or \"generator\"");

  ChannelKind kind = ChannelKind::Channel;
  if (j.contains("kind")) {
    std::string k = j["kind"].get<std::string>();
    if (k == "operation")
      kind = ChannelKind::Operation;
    else if (k != "channel")
      bad("channel: \"kind\" must be \"channel\" or \"operation\"");
  }
  if (!j["kraus"].is_array() || j["kraus"].empty()) bad("channel: empty Kraus list");
  std::vector<Matrix> ops;
  for (const auto& mj : j["kraus"]) ops.push_back(parse_matrix(mj, "channel"));
  if (j.contains("input_dim") && parse_number(j["input_dim"], "channel") != ops[0].cols())
    bad("channel: input_dim disagrees with the Kraus shapes");
  if (j.contains("output_dim") && parse_number(j["output_dim"], "channel") != ops[0].rows())
    bad("channel: output_dim disagrees with the Kraus shapes");
  LoadedChannel loaded{KrausChannel::from_kraus(std::move(ops), kind), "kraus", std::nullopt,
                       std::nullopt};
  return loaded;
}

LoadedChannel load_channel(const std::string& path) { return parse_channel(slurp(path)); }

HamiltonianSpectrum parse_hamiltonian(const std::string& text) {
  json j = parse_root(text, "hamiltonian", "hamiltonian");
  std::string kind = j.value("kind", std::string());
  if (kind == "explicit") {
    if (!j.contains("levels")) bad("hamiltonian: explicit kind needs \"levels\"");
    TailModel tail = TailModel::Finite;
    if (j.contains("tail")) {
      std::string t = j["tail"].get<std::string>();
      if (t == "geometric_gap")
        tail = TailModel::GeometricGap;
      else if (t != "finite")
        bad("hamiltonian: \"tail\" must be \"finite\" or \"geometric_gap\"");
    }
    double gap = j.contains("gap") ? parse_number(j["gap"], "hamiltonian") : 0.0;
    return HamiltonianSpectrum::explicit_levels(parse_rvector(j["levels"], "hamiltonian"), tail,
                                                gap);
  }
  if (kind == "oscillator") {
    if (!j.contains("hbar_omega")) bad("hamiltonian: oscillator kind needs \"hbar_omega\"");
    std::vector<double> omega;
    if (j["hbar_omega"].is_number())
      omega.push_back(j["hbar_omega"].get<double>());
    else
      omega = parse_rvector(j["hbar_omega"], "hamiltonian");
    double cutoff = j.contains("cutoff") ? parse_number(j["cutoff"], "hamiltonian") : 0.0;
    return HamiltonianSpectrum::oscillator(std::move(omega), cutoff);
  }
  bad("hamiltonian: \"kind\" must be \"explicit\" or \"oscillator\"");
}

HamiltonianSpectrum load_hamiltonian(const std::string& path) {
  return parse_hamiltonian(slurp(path));
}

// ----------------------------------------------------------------------------
// Emission.
// ----------------------------------------------------------------------------

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (first_.empty()) return;
  if (first_.back())
    first_.back() = false;
  else
    out_ += ',';
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (!first_.empty() && first_.back())
    first_.back() = false;
  else if (!first_.empty())
    out_ += ',';
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  comma();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  comma();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default: out_ += c;
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

}  // namespace qcent
