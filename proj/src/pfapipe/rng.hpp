#pragma once

#include <cstdint>
#include <random>

namespace pfapipe {

// Deterministic random source. mt19937_64 has a standard-defined sequence and
// the uniform/gaussian mappings below avoid the implementation-defined
// std::*_distribution classes, so identical seeds give bit-identical streams
// on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1) with 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi);  // inclusive bounds

  // Standard normal via Box-Muller.
  double gaussian();

  // Independent deterministic substream.
  Rng fork(std::uint64_t stream) const;

private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pfapipe
