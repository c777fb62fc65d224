#include "stochlab/permutation.hpp"

#include <numeric>
#include <random>

#include "stochlab/errors.hpp"

namespace stochlab {

FinitePermutation::FinitePermutation(std::vector<std::uint64_t> forward)
    : forward_(std::move(forward)), inverse_(forward_.size(), UINT64_MAX) {
  const std::size_t n = forward_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = forward_[i];
    if (v >= n) {
      throw OutOfRangeError("permutation image " + std::to_string(v) + " at " +
                            std::to_string(i) + " outside [0, " + std::to_string(n) + ")");
    }
    if (inverse_[v] != UINT64_MAX) {
      throw InvariantViolation("permutation image " + std::to_string(v) + " repeated at " +
                               std::to_string(i));
    }
    inverse_[v] = i;
  }
}

FinitePermutation FinitePermutation::identity(std::size_t n) {
  std::vector<std::uint64_t> f(n);
  std::iota(f.begin(), f.end(), 0);
  return FinitePermutation(std::move(f));
}

FinitePermutation FinitePermutation::reversal(std::size_t n) {
  std::vector<std::uint64_t> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = n - 1 - i;
  return FinitePermutation(std::move(f));
}

FinitePermutation FinitePermutation::swap_adjacent_pairs(std::size_t n) {
  std::vector<std::uint64_t> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = i ^ 1U;
  if (n % 2 == 1) f[n - 1] = n - 1;
  return FinitePermutation(std::move(f));
}

FinitePermutation FinitePermutation::random(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> f(n);
  std::iota(f.begin(), f.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(f[i - 1], f[pick(rng)]);
  }
  return FinitePermutation(std::move(f));
}

BitPrefix permute_image(const FinitePermutation& pi, const BitPrefix& a) {
  if (a.size() != pi.size()) {
    throw LengthMismatchError("permute_image: prefix length " + std::to_string(a.size()) +
                              " != permutation size " + std::to_string(pi.size()));
  }
  BitPrefix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) out.set(pi(i), true);
  }
  return out;
}

}  // namespace stochlab
