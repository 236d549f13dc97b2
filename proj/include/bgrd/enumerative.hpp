#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bgrd {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::size_t n, std::size_t k);

// Colex rank of a fixed-weight bit pattern among all arrangements of the
// same length and weight; rank in [0, C(n,k)).
BigInt combination_rank(std::span<const std::uint8_t> b);

std::vector<std::uint8_t> combination_unrank(BigInt rank, std::size_t n, std::size_t k);

// Fixed-length lossless code for support patterns in the typical shell
// {b : |weight(b)/n - p| <= eps1}: codeword index = shell offset of the
// weight class plus the in-class rank, biased by one so the all-zero
// word stays reserved as the escape.
class SupportCode {
 public:
  SupportCode(std::size_t n, double p, double eps1);

  std::size_t n() const { return n_; }
  std::size_t k_lo() const { return k_lo_; }
  std::size_t k_hi() const { return k_hi_; }
  int width_bits() const { return width_bits_; }
  const BigInt& shell_size() const { return total_; }

  bool in_shell(std::size_t k) const { return k >= k_lo_ && k <= k_hi_; }

  // Returns the codeword index, or nullopt when the pattern is atypical
  // (caller emits the all-zero escape word).
  std::optional<BigInt> encode(std::span<const std::uint8_t> b) const;

  // Inverts encode; index 0 is the escape.
  std::optional<std::vector<std::uint8_t>> decode(const BigInt& index) const;

 private:
  std::size_t n_;
  std::size_t k_lo_;
  std::size_t k_hi_;
  std::vector<BigInt> offsets_;  // offsets_[k - k_lo_]
  BigInt total_;
  int width_bits_;
};

}  // namespace bgrd
