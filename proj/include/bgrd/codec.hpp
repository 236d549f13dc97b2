#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bgrd/enumerative.hpp"
#include "bgrd/quantizer.hpp"

namespace bgrd {

struct CodecConfig {
  std::size_t n = 0;
  double p = 0.0;
  double target_D = 0.0;
  double epsilon1 = 0.01;
  std::uint64_t seed = 0;

  void validate() const;
};

struct CodecReport {
  std::size_t n = 0;
  std::size_t blocks = 0;
  double empirical_rate = 0.0;        // bits/symbol
  double empirical_distortion = 0.0;  // mean squared error
  double support_bits = 0.0;          // per block average
  double value_bits = 0.0;            // per block average
  std::size_t atypical_flag_count = 0;
  std::size_t clamped_values = 0;
  double escape_distortion = 0.0;  // distortion mass carried by escape blocks
  std::uint64_t seed = 0;
};

struct SourceBlock {
  std::vector<std::uint8_t> b;
  std::vector<double> s;
  std::vector<double> x;
};

// x = b .* s with b ~ Bernoulli(p), s ~ N(0,1); deterministic given seed.
SourceBlock sample_source(std::size_t n, double p, std::uint64_t seed);

// Two-stage coder: enumerative lossless support + entropy-coded uniform
// quantization of the nonzero values at per-value distortion target_D/p.
class Codec {
 public:
  explicit Codec(const CodecConfig& cfg);

  const SupportCode& support_code() const { return support_; }
  const UniformQuantizer& quantizer() const { return quantizer_; }

  struct Block {
    std::vector<std::uint8_t> bytes;  // [escape][16-bit k][rank][payload]
    std::size_t support_bits = 0;     // enumerative fixed-length accounting
    std::size_t value_bits = 0;
    bool escaped = false;
    std::size_t clamped = 0;
  };

  Block encode(std::span<const double> x) const;
  std::vector<double> decode(const Block& block) const;
  std::vector<double> round_trip(std::span<const double> x) const;

  CodecReport run(std::size_t blocks) const;

 private:
  CodecConfig cfg_;
  SupportCode support_;
  UniformQuantizer quantizer_;
  int rank_width_bits_;  // fixed width of the serialized rank field
};

CodecReport run_codec(const CodecConfig& cfg, std::size_t blocks);

}  // namespace bgrd
