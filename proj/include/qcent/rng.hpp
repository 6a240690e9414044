// rng.hpp -- counter-based deterministic randomness.
//
// Generator: the splitmix64 output function (Steele/Lea/Flood constants)
// applied to key + i * GOLDEN for draw index i.  A draw never mutates shared
// state beyond the local counter, so any (seed, stream path, index) triple
// names one fixed value, on every platform, forever.
//
// Streams: child keys are derived by mixing a label into the parent key.
// Samplers split a fresh stream per subtask, so inserting a draw in one
// subtask never shifts the values seen by another.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace qcent {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  // Child generator for an independent labeled stream.
  Rng stream(std::uint64_t label) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(label + 0x632be59bd9b4e019ull));
    child.counter_ = 0;
    return child;
  }

  Rng stream(std::string_view label) const { return stream(fnv1a(label)); }

  std::uint64_t next_u64() {
    std::uint64_t z = key_ + (counter_++) * 0x9e3779b97f4a7c15ull;
    return mix(z);
  }

  // Uniform on (0, 1]: never zero, so logs are safe.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller; draws two uniforms per call, no state.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qcent
