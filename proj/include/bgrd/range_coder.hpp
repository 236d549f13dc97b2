#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bgrd {

// Byte-oriented range coder (carry-propagating, LZMA style). Symbols are
// coded against integer cumulative frequencies with total <= 2^16.
class RangeEncoder {
 public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
    range_ /= total;
    low_ += static_cast<std::uint64_t>(cum) * range_;
    range_ *= freq;
    while (range_ < kTop) {
      shift_low();
      range_ <<= 8;
    }
  }

  std::vector<std::uint8_t> finish() {
    for (int i = 0; i < 5; ++i) shift_low();
    return std::move(out_);
  }

 private:
  static constexpr std::uint32_t kTop = 1u << 24;

  void shift_low() {
    if (static_cast<std::uint32_t>(low_ >> 32) != 0 ||
        static_cast<std::uint32_t>(low_) < 0xFF000000u) {
      if (!first_) {
        out_.push_back(static_cast<std::uint8_t>(cache_ + (low_ >> 32)));
      }
      for (; pending_ > 0; --pending_)
        out_.push_back(static_cast<std::uint8_t>(0xFF + (low_ >> 32)));
      cache_ = static_cast<std::uint8_t>(low_ >> 24);
      first_ = false;
    } else {
      ++pending_;
    }
    low_ = (low_ << 8) & 0xFFFFFFFFull;
  }

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::size_t pending_ = 0;
  bool first_ = true;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(const std::vector<std::uint8_t>& data) : data_(data) {
    for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
  }

  std::uint32_t decode_cum(std::uint32_t total) {
    range_ /= total;
    const std::uint32_t v = code_ / range_;
    return v >= total ? total - 1 : v;
  }

  void consume(std::uint32_t cum, std::uint32_t freq) {
    code_ -= cum * range_;
    range_ *= freq;
    while (range_ < kTop) {
      code_ = (code_ << 8) | next_byte();
      range_ <<= 8;
    }
  }

 private:
  static constexpr std::uint32_t kTop = 1u << 24;

  std::uint8_t next_byte() { return pos_ < data_.size() ? data_[pos_++] : 0; }

  const std::vector<std::uint8_t>& data_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
};

}  // namespace bgrd
