#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stochlab/types.hpp"

namespace stochlab {

/// A finite initial segment [0, size) of a characteristic function.
///
/// Positions at or beyond size() are undefined: reading them throws
/// OutOfRangeError instead of returning 0.
class BitPrefix {
 public:
  BitPrefix() = default;
  explicit BitPrefix(std::size_t len);
  explicit BitPrefix(std::vector<std::uint8_t> bits);

  /// Parses a string of '0'/'1'.
  static BitPrefix from_string(std::string_view bits);
  /// Characteristic function of `members` on [0, len).
  static BitPrefix from_members(std::size_t len, std::span<const Door> members);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool at(std::size_t i) const;
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value);

  /// |A ∩ [0, n)|; n may equal size().
  std::uint64_t count_below(std::size_t n) const;
  std::uint64_t popcount() const { return count_below(size()); }

  /// Elements of the set, increasing.
  std::vector<Door> members() const;
  std::string str() const;

  std::span<const std::uint8_t> raw() const { return bits_; }

  bool operator==(const BitPrefix&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace stochlab
