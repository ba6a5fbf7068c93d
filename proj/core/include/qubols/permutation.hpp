#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qubols {

/// Bijection on {0..n-1}; image()[i] is where element i maps.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> image);

  static Permutation identity(std::size_t n);
  static Permutation random(std::size_t n, std::mt19937_64& rng);

  std::size_t size() const { return image_.size(); }
  std::uint32_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::uint32_t>& image() const { return image_; }

  /// Exchanges the images of positions a and b.
  void swap_images(std::size_t a, std::size_t b);

  Permutation inverse() const;

  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> image_;
};

}  // namespace qubols
