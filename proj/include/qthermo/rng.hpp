#pragma once

#include <cstdint>
#include <random>

namespace qthermo {

// splitmix64 finalizer. Used to derive independent per-trial seeds from a
// master seed: trial_seed = mix_seed(master, trial_index).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

// Thin wrapper over mt19937_64. The standard distributions are
// implementation-defined, so uniform draws are derived from the raw engine
// output directly to keep runs bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0 (multiply-shift reduction).
  std::uint64_t below(std::uint64_t bound) {
    const wide_t wide = static_cast<wide_t>(engine_()) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  __extension__ typedef unsigned __int128 wide_t;
  std::mt19937_64 engine_;
};

}  // namespace qthermo
