#include "bgrd/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bgrd/range_coder.hpp"
#include "bgrd/special_functions.hpp"

namespace bgrd {
namespace {

struct CellModel {
  int max_index;
  std::vector<double> prob;
  std::vector<double> centroid;
  double mse;
  double entropy_bits;
};

CellModel build_cells(double step) {
  const int max_index = static_cast<int>(std::ceil(8.0 / step)) + 1;
  CellModel m;
  m.max_index = max_index;
  m.mse = 0.0;
  m.entropy_bits = 0.0;
  for (int k = -max_index; k <= max_index; ++k) {
    const double lo = (k == -max_index) ? -kInf : (k - 0.5) * step;
    const double hi = (k == max_index) ? kInf : (k + 0.5) * step;
    const double p = truncated_moment(0, Interval(lo, hi));
    const double m1 = truncated_moment(1, Interval(lo, hi));
    const double m2 = truncated_moment(2, Interval(lo, hi));
    const double c = p > 0.0 ? m1 / p : k * step;
    m.prob.push_back(p);
    m.centroid.push_back(c);
    if (p > 0.0) {
      m.mse += m2 - 2.0 * c * m1 + c * c * p;
      if (p > 1e-300) m.entropy_bits -= p * std::log2(p);
    }
  }
  return m;
}

}  // namespace

UniformQuantizer UniformQuantizer::calibrate(double target_mse) {
  if (!(target_mse > 0.0))
    throw std::invalid_argument("UniformQuantizer: target_mse must be > 0");
  UniformQuantizer q;
  if (target_mse >= 1.0) {
    q.zero_rate_ = true;
    q.model_mse_ = 1.0;
    return q;
  }
  // model MSE is increasing in the step; bisect
  double lo = 1e-4, hi = 16.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (build_cells(mid).mse < target_mse)
      lo = mid;
    else
      hi = mid;
  }
  const double step = 0.5 * (lo + hi);
  CellModel m = build_cells(step);
  q.step_ = step;
  q.max_index_ = m.max_index;
  q.model_mse_ = m.mse;
  q.model_entropy_bits_ = m.entropy_bits;
  q.centroids_ = m.centroid;

  // frequency table: every cell keeps at least one count
  const std::size_t cells = m.prob.size();
  q.freq_.assign(cells, 1);
  std::uint32_t assigned = static_cast<std::uint32_t>(cells);
  if (assigned >= kFreqTotal)
    throw std::runtime_error("UniformQuantizer: too many cells for freq table");
  const std::uint32_t budget = kFreqTotal - assigned;
  double residual = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double share = m.prob[i] * budget + residual;
    const std::uint32_t add = static_cast<std::uint32_t>(share);
    residual = share - add;
    q.freq_[i] += add;
  }
  // hand any rounding remainder to the centre cell
  std::uint32_t used = 0;
  for (auto f : q.freq_) used += f;
  q.freq_[cells / 2] += kFreqTotal - used;

  q.cum_freq_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < cells; ++i) q.cum_freq_[i + 1] = q.cum_freq_[i] + q.freq_[i];
  return q;
}

int UniformQuantizer::index_of(double v, bool* clamped) const {
  if (zero_rate_) {
    if (clamped) *clamped = false;
    return 0;
  }
  const double raw = std::round(v / step_);
  bool clip = false;
  int k;
  if (raw < -max_index_) {
    k = -max_index_;
    clip = true;
  } else if (raw > max_index_) {
    k = max_index_;
    clip = true;
  } else {
    k = static_cast<int>(raw);
  }
  if (clamped) *clamped = clip;
  return k;
}

double UniformQuantizer::reconstruct(int index) const {
  if (zero_rate_) return 0.0;
  if (index < -max_index_ || index > max_index_)
    throw std::out_of_range("UniformQuantizer::reconstruct: index out of range");
  return centroids_[static_cast<std::size_t>(index + max_index_)];
}

std::vector<std::uint8_t> UniformQuantizer::encode_indices(std::span<const int> indices) const {
  if (zero_rate_) return {};
  RangeEncoder enc;
  for (int idx : indices) {
    const std::size_t cell = static_cast<std::size_t>(idx + max_index_);
    enc.encode(cum_freq_[cell], freq_[cell], kFreqTotal);
  }
  return enc.finish();
}

std::vector<int> UniformQuantizer::decode_indices(const std::vector<std::uint8_t>& bytes,
                                                  std::size_t count) const {
  std::vector<int> out;
  out.reserve(count);
  if (zero_rate_) {
    out.assign(count, 0);
    return out;
  }
  RangeDecoder dec(bytes);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t cum = dec.decode_cum(kFreqTotal);
    const std::size_t cell =
        static_cast<std::size_t>(std::upper_bound(cum_freq_.begin(), cum_freq_.end(), cum) -
                                 cum_freq_.begin()) -
        1;
    dec.consume(cum_freq_[cell], freq_[cell]);
    out.push_back(static_cast<int>(cell) - max_index_);
  }
  return out;
}

UniformQuantizer::Result UniformQuantizer::quantize(std::span<const double> values) const {
  Result res;
  std::vector<int> idx;
  idx.reserve(values.size());
  for (double v : values) {
    bool clip = false;
    idx.push_back(index_of(v, &clip));
    if (clip) ++res.clamped;
  }
  res.bytes = encode_indices(idx);
  res.reconstruction.reserve(values.size());
  for (int k : idx) res.reconstruction.push_back(reconstruct(k));
  return res;
}

}  // namespace bgrd
