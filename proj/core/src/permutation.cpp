#include "qubols/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "qubols/errors.hpp"

namespace qubols {

Permutation::Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v]) throw Error("Permutation: image is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  return Permutation(std::move(image));
}

Permutation Permutation::random(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  std::shuffle(image.begin(), image.end(), rng);
  return Permutation(std::move(image));
}

void Permutation::swap_images(std::size_t a, std::size_t b) {
  std::swap(image_[a], image_[b]);
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<std::uint32_t>(i);
  return Permutation(std::move(inv));
}

std::string Permutation::str() const {
  std::string s;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(image_[i]);
  }
  return s;
}

}  // namespace qubols
