#pragma once

#include <cstdint>
#include <vector>

#include "stochlab/bit_prefix.hpp"

namespace stochlab {

/// A bijection of [0, size) stored with its inverse.
class FinitePermutation {
 public:
  FinitePermutation() = default;
  /// Validates that `forward` hits every value in [0, size) exactly once.
  explicit FinitePermutation(std::vector<std::uint64_t> forward);

  static FinitePermutation identity(std::size_t n);
  static FinitePermutation reversal(std::size_t n);
  /// 2k <-> 2k+1; a trailing odd element stays fixed.
  static FinitePermutation swap_adjacent_pairs(std::size_t n);
  /// Uniform permutation from a seeded Fisher-Yates shuffle.
  static FinitePermutation random(std::size_t n, std::uint64_t seed);

  std::size_t size() const { return forward_.size(); }
  std::uint64_t operator()(std::uint64_t i) const { return forward_.at(i); }
  std::uint64_t inverse(std::uint64_t j) const { return inverse_.at(j); }

  const std::vector<std::uint64_t>& forward() const { return forward_; }

  bool operator==(const FinitePermutation& rhs) const { return forward_ == rhs.forward_; }

 private:
  std::vector<std::uint64_t> forward_;
  std::vector<std::uint64_t> inverse_;
};

/// Characteristic function of pi(A ∩ [0, size)) on [0, size).
BitPrefix permute_image(const FinitePermutation& pi, const BitPrefix& a);

}  // namespace stochlab
