#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace stochlab {

/// Exact rational in lowest terms with a positive denominator.
///
/// Arithmetic is checked: intermediate products use 128-bit integers and a
/// result that does not fit back into 64 bits raises RangeError.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& rhs) const;
  Rational operator-(const Rational& rhs) const;
  Rational operator*(const Rational& rhs) const;
  Rational operator/(const Rational& rhs) const;
  Rational operator-() const;

  bool operator==(const Rational& rhs) const = default;
  std::strong_ordering operator<=>(const Rational& rhs) const;

  double to_double() const;
  /// "p/q", always with the slash.
  std::string str() const;
  /// Fixed-point decimal rounded half-to-even.
  std::string decimal(int places = 6) const;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// H_m = 1 + 1/2 + ... + 1/m, exactly.
Rational harmonic_number(std::uint64_t m);

}  // namespace stochlab
