#pragma once

#include <cstdint>

#include "bgrd/special_functions.hpp"

namespace bgrd {

// SplitMix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based generator: output i of stream (seed, stream) is a pure
// function of (seed, stream, i). Gaussian variates go through the normal
// quantile so every platform reproduces the same reals bit for bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed) ^ (0xD1B54A32D192ED03ull * (stream + 1)))) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

  // Uniform on the open interval (0,1).
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() { return inverse_normal_cdf(next_uniform()); }

  bool next_bernoulli(double p) { return next_uniform() < p; }

  // Independent child stream, e.g. one per Monte Carlo trial.
  CounterRng substream(std::uint64_t index) const {
    CounterRng child(0, 0);
    child.key_ = mix64(key_ ^ (0x8CB92BA72F3D8DD7ull * (index + 1)));
    return child;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bgrd
