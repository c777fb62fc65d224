#include "stochlab/rational.hpp"

#include <cstdlib>
#include <limits>

#include "stochlab/errors.hpp"

namespace stochlab {
namespace {

using Wide = __int128;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::string wide_to_string(Wide v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string out;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    out.insert(out.begin(), static_cast<char>('0' + std::abs(digit)));
    v /= 10;
  }
  if (neg) out.insert(out.begin(), '-');
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw RangeError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw RangeError("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::operator+(const Rational& rhs) const {
  return from_wide(Wide(num_) * rhs.den_ + Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
}

Rational Rational::operator-(const Rational& rhs) const {
  return from_wide(Wide(num_) * rhs.den_ - Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
}

Rational Rational::operator*(const Rational& rhs) const {
  return from_wide(Wide(num_) * rhs.num_, Wide(den_) * rhs.den_);
}

Rational Rational::operator/(const Rational& rhs) const {
  if (rhs.num_ == 0) throw RangeError("rational division by zero");
  return from_wide(Wide(num_) * rhs.den_, Wide(den_) * rhs.num_);
}

Rational Rational::operator-() const { return from_wide(-Wide(num_), den_); }

std::strong_ordering Rational::operator<=>(const Rational& rhs) const {
  Wide lhs_cross = Wide(num_) * rhs.den_;
  Wide rhs_cross = Wide(rhs.num_) * den_;
  if (lhs_cross < rhs_cross) return std::strong_ordering::less;
  if (lhs_cross > rhs_cross) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal(int places) const {
  Wide scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Wide scaled = wide_abs(Wide(num_)) * scale;
  Wide quot = scaled / den_;
  Wide rem = scaled % den_;
  // round half to even
  if (2 * rem > den_ || (2 * rem == den_ && quot % 2 == 1)) ++quot;

  std::string digits = wide_to_string(quot);
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (num_ < 0 && quot != 0) digits.insert(digits.begin(), '-');
  return digits;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational harmonic_number(std::uint64_t m) {
  Rational sum(0);
  for (std::uint64_t k = 1; k <= m; ++k) {
    sum = sum + Rational(1, static_cast<std::int64_t>(k));
  }
  return sum;
}

}  // namespace stochlab
