#include "bgrd/enumerative.hpp"

#include <cmath>
#include <stdexcept>

namespace bgrd {

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c *= static_cast<std::uint64_t>(n - k + i);
    c /= static_cast<std::uint64_t>(i);
  }
  return c;
}

BigInt combination_rank(std::span<const std::uint8_t> b) {
  // rank = sum over the i-th one (1-based, at position pos) of C(pos, i);
  // C(pos, c) is carried incrementally along the scan.
  BigInt rank = 0;
  BigInt binom = 1;  // C(pos, ones_seen) for the current pos
  std::size_t ones = 0;
  for (std::size_t pos = 0; pos < b.size(); ++pos) {
    if (pos > 0) {
      if (ones == pos) {
        binom = 1;  // C(pos, pos); the ratio recurrence divides by zero here
      } else {
        // C(pos, ones) from C(pos-1, ones)
        binom *= static_cast<std::uint64_t>(pos);
        binom /= static_cast<std::uint64_t>(pos - ones);
      }
    }
    if (b[pos]) {
      // C(pos, ones+1) = C(pos, ones) * (pos-ones) / (ones+1)
      binom *= static_cast<std::uint64_t>(pos - ones);
      binom /= static_cast<std::uint64_t>(ones + 1);
      ++ones;
      rank += binom;
    }
  }
  return rank;
}

std::vector<std::uint8_t> combination_unrank(BigInt rank, std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("combination_unrank: k > n");
  std::vector<std::uint8_t> b(n, 0);
  if (k == 0) {
    if (rank != 0) throw std::out_of_range("combination_unrank: rank out of range");
    return b;
  }
  // Greedy from the largest position: the i-th one (i = k..1) sits at the
  // largest pos with C(pos, i) <= remaining rank.
  std::size_t pos = n - 1;
  BigInt binom = binomial(pos, k);
  for (std::size_t i = k; i >= 1; --i) {
    while (binom > rank) {
      if (pos == 0) throw std::out_of_range("combination_unrank: rank out of range");
      // C(pos-1, i) = C(pos, i) * (pos-i) / pos
      binom *= static_cast<std::uint64_t>(pos - i);
      binom /= static_cast<std::uint64_t>(pos);
      --pos;
    }
    if (b[pos]) throw std::out_of_range("combination_unrank: rank out of range");
    b[pos] = 1;
    rank -= binom;
    if (i > 1) {
      if (pos == i - 1) {
        binom = 1;  // C(i-1, i-1); the ratio recurrence divides by zero here
      } else {
        // C(pos, i-1) = C(pos, i) * i / (pos-i+1)
        binom *= static_cast<std::uint64_t>(i);
        binom /= static_cast<std::uint64_t>(pos - i + 1);
      }
    }
  }
  if (rank != 0) throw std::out_of_range("combination_unrank: rank out of range");
  return b;
}

SupportCode::SupportCode(std::size_t n, double p, double eps1) : n_(n) {
  if (n < 1) throw std::invalid_argument("SupportCode: n < 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("SupportCode: p not in (0,1)");
  if (!(eps1 > 0.0)) throw std::invalid_argument("SupportCode: eps1 <= 0");
  const double lo = std::ceil((p - eps1) * static_cast<double>(n));
  const double hi = std::floor((p + eps1) * static_cast<double>(n));
  k_lo_ = lo < 0.0 ? 0 : static_cast<std::size_t>(lo);
  k_hi_ = hi < 0.0 ? 0 : std::min(n, static_cast<std::size_t>(hi));
  if (k_lo_ > k_hi_) throw std::invalid_argument("SupportCode: empty typical shell");

  total_ = 0;
  BigInt c = binomial(n, k_lo_);
  for (std::size_t k = k_lo_; k <= k_hi_; ++k) {
    offsets_.push_back(total_);
    total_ += c;
    // C(n, k+1) from C(n, k)
    c *= static_cast<std::uint64_t>(n - k);
    c /= static_cast<std::uint64_t>(k + 1);
  }
  width_bits_ = static_cast<int>(boost::multiprecision::msb(total_) + 1);
  // total_+1 distinct values once the escape word is counted
  BigInt cap = BigInt(1) << width_bits_;
  if (cap < total_ + 1) ++width_bits_;
}

std::optional<BigInt> SupportCode::encode(std::span<const std::uint8_t> b) const {
  if (b.size() != n_) throw std::invalid_argument("SupportCode::encode: length mismatch");
  std::size_t k = 0;
  for (auto v : b) k += (v != 0);
  if (!in_shell(k)) return std::nullopt;
  return offsets_[k - k_lo_] + combination_rank(b) + 1;
}

std::optional<std::vector<std::uint8_t>> SupportCode::decode(const BigInt& index) const {
  if (index == 0) return std::nullopt;  // escape
  if (index > total_) throw std::out_of_range("SupportCode::decode: index out of range");
  BigInt v = index - 1;
  std::size_t k = k_hi_;
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    if (v < offsets_[i + 1]) {
      k = k_lo_ + i;
      break;
    }
  }
  return combination_unrank(v - offsets_[k - k_lo_], n_, k);
}

}  // namespace bgrd
