#include "stochlab/bit_prefix.hpp"

#include <algorithm>

#include "stochlab/errors.hpp"

namespace stochlab {

BitPrefix::BitPrefix(std::size_t len) : bits_(len, 0) {}

BitPrefix::BitPrefix(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw OutOfRangeError("bit value other than 0/1");
  }
}

BitPrefix BitPrefix::from_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    char c = bits[i];
    if (c != '0' && c != '1') {
      throw ParseError("invalid bit character at offset " + std::to_string(i), i);
    }
    out.push_back(c == '1' ? 1 : 0);
  }
  return BitPrefix(std::move(out));
}

BitPrefix BitPrefix::from_members(std::size_t len, std::span<const Door> members) {
  BitPrefix out(len);
  for (Door d : members) out.set(d, true);
  return out;
}

bool BitPrefix::at(std::size_t i) const {
  if (i >= bits_.size()) {
    throw OutOfRangeError("position " + std::to_string(i) + " beyond prefix of length " +
                          std::to_string(bits_.size()));
  }
  return bits_[i] != 0;
}

void BitPrefix::set(std::size_t i, bool value) {
  if (i >= bits_.size()) {
    throw OutOfRangeError("position " + std::to_string(i) + " beyond prefix of length " +
                          std::to_string(bits_.size()));
  }
  bits_[i] = value ? 1 : 0;
}

std::uint64_t BitPrefix::count_below(std::size_t n) const {
  if (n > bits_.size()) {
    throw OutOfRangeError("count past prefix end: " + std::to_string(n));
  }
  return static_cast<std::uint64_t>(
      std::count(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n), 1));
}

std::vector<Door> BitPrefix::members() const {
  std::vector<Door> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::string BitPrefix::str() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

}  // namespace stochlab
