#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bgrd {

struct ChannelConfig {
  std::size_t n = 0;
  double p = 0.0;
  double rate_tilde = 0.0;  // codebook size M = ceil(2^{n * rate_tilde})
  double L = -1.0;          // score threshold; < 0 means "use the optimizer's witness"
  double D = 0.0;           // codec distortion target
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.05;   // typicality slack for the diagnostics
  double delta1 = 0.005;   // distortion-excess slack for the diagnostics

  void validate() const;
};

struct ChannelReport {
  std::size_t n = 0;
  double rate_tilde = 0.0;
  double log2_M = 0.0;
  double error_rate = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double threshold_L = 0.0;

  // score margin s1 - w*p: own score minus the competitor score mean
  double margin_min = 0.0;
  double margin_mean = 0.0;
  double margin_max = 0.0;

  // failure-mode diagnostics
  std::size_t atypical_codeword = 0;
  std::size_t atypical_values = 0;
  std::size_t distortion_excess = 0;
  double confusion = 0.0;  // expected count of score-confusion events
};

using Codeword = std::vector<std::uint8_t>;

// M independent length-n i.i.d. Bernoulli(p) codewords.
std::vector<Codeword> sample_codebook(std::size_t M, std::size_t n, double p,
                                      std::uint64_t seed);

// #{k : c(k) = 1 and |xhat_k| >= L}
std::size_t score(std::span<const std::uint8_t> c, std::span<const double> xhat, double L);

// argmax of score over the codebook; ties toward the smallest index.
std::size_t decode(const std::vector<Codeword>& codebook, std::span<const double> xhat,
                   double L);

ChannelReport run_channel_experiment(const ChannelConfig& cfg);

}  // namespace bgrd
