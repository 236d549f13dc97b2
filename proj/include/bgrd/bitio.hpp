#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bgrd {

// MSB-first bit writer.
class BitWriter {
 public:
  void put_bit(bool b) {
    if (fill_ == 0) {
      bytes_.push_back(0);
      fill_ = 8;
    }
    --fill_;
    if (b) bytes_.back() |= static_cast<std::uint8_t>(1u << fill_);
    ++bit_count_;
  }

  void put_bits(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) put_bit((value >> i) & 1u);
  }

  void put_bytes(const std::vector<std::uint8_t>& data) {
    for (auto b : data) put_bits(b, 8);
  }

  std::size_t bit_count() const { return bit_count_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  int fill_ = 0;
  std::size_t bit_count_ = 0;
};

class BitReader {
 public:
  explicit BitReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  bool get_bit() {
    if (pos_ >= bytes_.size() * 8) throw std::out_of_range("BitReader: past end");
    const bool b = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    ++pos_;
    return b;
  }

  std::uint64_t get_bits(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
    return v;
  }

  std::vector<std::uint8_t> get_bytes(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (auto& b : out) b = static_cast<std::uint8_t>(get_bits(8));
    return out;
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace bgrd
