#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bgrd {

// Uniform scalar quantizer for N(0,1) inputs with centroid reconstruction
// and a frozen frequency model for entropy coding. Cells are centred at
// multiples of the step; the outermost cells extend to infinity.
class UniformQuantizer {
 public:
  // Picks the step so the model mean squared error matches target_mse.
  // A target of >= 1 (the source variance) degenerates to the zero-rate
  // quantizer that reconstructs everything as 0.
  static UniformQuantizer calibrate(double target_mse);

  bool zero_rate() const { return zero_rate_; }
  double step() const { return step_; }
  int max_index() const { return max_index_; }
  double model_mse() const { return model_mse_; }
  double model_entropy_bits() const { return model_entropy_bits_; }

  // Cell index in [-max_index, max_index]; *clamped is set when |v| lies
  // beyond the outermost cell edge.
  int index_of(double v, bool* clamped = nullptr) const;

  double reconstruct(int index) const;

  // Entropy-codes the index stream against the model frequencies.
  std::vector<std::uint8_t> encode_indices(std::span<const int> indices) const;
  std::vector<int> decode_indices(const std::vector<std::uint8_t>& bytes,
                                  std::size_t count) const;

  // Convenience: quantize, report bits and clamps, return reconstruction.
  struct Result {
    std::vector<std::uint8_t> bytes;
    std::vector<double> reconstruction;
    std::size_t clamped = 0;
  };
  Result quantize(std::span<const double> values) const;

 private:
  UniformQuantizer() = default;

  bool zero_rate_ = false;
  double step_ = 0.0;
  int max_index_ = 0;
  double model_mse_ = 1.0;
  double model_entropy_bits_ = 0.0;
  std::vector<double> centroids_;       // index + max_index_
  std::vector<std::uint32_t> freq_;     // scaled to kFreqTotal
  std::vector<std::uint32_t> cum_freq_; // prefix sums, size freq_+1
  static constexpr std::uint32_t kFreqTotal = 1u << 16;
};

}  // namespace bgrd
