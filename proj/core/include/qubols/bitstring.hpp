#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "qubols/errors.hpp"

namespace qubols {

/// A fixed-length vector of binary variables.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
      if (b > 1) throw Error("BitString: values must be 0 or 1");
  }
  BitString(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
      if (b != 0 && b != 1) throw Error("BitString: values must be 0 or 1");
      bits_.push_back(static_cast<std::uint8_t>(b));
    }
  }

  static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }
  static BitString ones(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 1)); }

  static BitString random(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    return BitString(std::move(bits));
  }

  /// Bits of `value`, index 0 = least significant. Handy for exhaustive scans.
  static BitString from_index(std::uint64_t value, std::size_t n) {
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((value >> i) & 1u);
    return BitString(std::move(bits));
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1u; }

  std::size_t count_ones() const {
    std::size_t c = 0;
    for (auto b : bits_) c += b;
    return c;
  }

  const std::vector<std::uint8_t>& data() const { return bits_; }

  std::string str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  /// Sequence-lexicographic order, bit 0 most significant.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace qubols
