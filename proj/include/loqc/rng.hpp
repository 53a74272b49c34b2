#pragma once

#include <cstdint>
#include <random>

namespace loqc::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic uniform source. mt19937_64's raw stream is fully specified
/// by the standard and the 53-bit mapping below avoids the
/// implementation-defined std distributions, so draws are bit-identical
/// across platforms.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace loqc::rng
