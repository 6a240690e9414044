#pragma once

// File formats and deterministic emission.
//
// All input files share one self-describing JSON layout with "version": "v1".
// Emission goes through JsonWriter, which formats every floating-point number
// with 17 significant digits so that identical runs produce identical bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcent/channel.hpp"
#include "qcent/energy.hpp"
#include "qcent/entropy.hpp"

namespace qcent {

// ---------------------------------------------------------------------------
// Parsing. parse_* take JSON text; load_* read a file first. Malformed input
// raises Error(ParseError); semantic violations raise the domain error of the
// constructor that rejected them.
// ---------------------------------------------------------------------------

DensityOperator parse_state(const std::string& text);
DensityOperator load_state(const std::string& path);

struct LoadedChannel {
  KrausChannel channel;
  std::string description;               // generator name or "kraus"
  std::optional<ChannelFamily> family;   // structured descriptor when known
  std::optional<double> hp_ceiling;      // certified sup of pure-output entropy
};

LoadedChannel parse_channel(const std::string& text);
LoadedChannel load_channel(const std::string& path);

HamiltonianSpectrum parse_hamiltonian(const std::string& text);
HamiltonianSpectrum load_hamiltonian(const std::string& path);

// ---------------------------------------------------------------------------
// Emission.
// ---------------------------------------------------------------------------

// Shortest text with 17 significant digits; "inf"/"nan" never appear in valid
// output (values are checked upstream).
std::string format_double(double value);

// Minimal streaming JSON writer with deterministic number formatting. Keys
// are emitted in call order; no escaping beyond the JSON control set is
// performed (emitted strings are ASCII identifiers and file paths).
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v);
  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;  // per nesting level: no element emitted yet
  bool pending_key_ = false;
};

}  // namespace qcent
