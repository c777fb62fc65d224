#include "stochlab/density.hpp"

#include <algorithm>

#include "stochlab/errors.hpp"

namespace stochlab {

Rational rho(const BitPrefix& a, std::uint64_t n) {
  if (n == 0 || n > a.size()) {
    throw OutOfRangeError("rho: n=" + std::to_string(n) + " outside [1, " +
                          std::to_string(a.size()) + "]");
  }
  return Rational(static_cast<std::int64_t>(a.count_below(n)), static_cast<std::int64_t>(n));
}

DensityProfile density_profile(const BitPrefix& a, std::uint64_t n_min) {
  if (n_min == 0) throw OutOfRangeError("density_profile: n_min must be >= 1");
  if (a.size() < n_min) {
    throw OutOfRangeError("density_profile: prefix of length " + std::to_string(a.size()) +
                          " shorter than n_min=" + std::to_string(n_min));
  }
  DensityProfile out;
  out.n_min = n_min;
  out.samples.reserve(a.size());
  std::uint64_t ones = 0;
  bool first_tail = true;
  for (std::uint64_t n = 1; n <= a.size(); ++n) {
    if (a[n - 1]) ++ones;
    Rational r(static_cast<std::int64_t>(ones), static_cast<std::int64_t>(n));
    out.samples.push_back({n, r});
    if (n < n_min) continue;
    if (first_tail) {
      out.max_rho = r;
      out.min_rho_tail = r;
      first_tail = false;
    } else {
      out.max_rho = std::max(out.max_rho, r);
      out.min_rho_tail = std::min(out.min_rho_tail, r);
    }
  }
  return out;
}

BitPrefix select_monotone(const MonotoneSelector& f, const BitPrefix& a) {
  std::vector<std::uint8_t> out;
  Door prev = 0;
  for (std::uint64_t t = 0; t < f.domain_bound; ++t) {
    Door d = f.rule(t);
    if (t > 0 && d <= prev) {
      throw ContractViolation("selector '" + f.name + "' is not increasing", t);
    }
    if (d >= a.size()) break;
    out.push_back(a[d] ? 1 : 0);
    prev = d;
  }
  return BitPrefix(std::move(out));
}

BitPrefix join(const BitPrefix& a, const BitPrefix& b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("join: lengths " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()));
  }
  std::vector<std::uint8_t> out(2 * a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[2 * k] = a[k];
    out[2 * k + 1] = b[k];
  }
  return BitPrefix(std::move(out));
}

namespace {

template <typename Op>
BitPrefix pointwise(const BitPrefix& a, const BitPrefix& b, const char* name, Op op) {
  if (a.size() != b.size()) {
    throw LengthMismatchError(std::string(name) + ": lengths " + std::to_string(a.size()) +
                              " and " + std::to_string(b.size()));
  }
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]) ? 1 : 0;
  return BitPrefix(std::move(out));
}

}  // namespace

BitPrefix set_union(const BitPrefix& a, const BitPrefix& b) {
  return pointwise(a, b, "set_union", [](bool x, bool y) { return x || y; });
}

BitPrefix set_difference(const BitPrefix& a, const BitPrefix& b) {
  return pointwise(a, b, "set_difference", [](bool x, bool y) { return x && !y; });
}

std::vector<AlphaWitness> alpha_shift_check(const BitPrefix& x, const BitPrefix& y,
                                            const FinitePermutation& pi, const Rational& q,
                                            const Rational& alpha, std::uint64_t k) {
  if (x.size() != y.size() || x.size() != pi.size()) {
    throw LengthMismatchError("alpha_shift_check: X, Y and pi must share one length");
  }
  const BitPrefix px = permute_image(pi, x);
  const BitPrefix punion = permute_image(pi, set_union(y, x));
  const BitPrefix prest = permute_image(pi, set_difference(y, x));
  const Rational half_q = q / Rational(2);

  std::vector<AlphaWitness> out;
  for (std::uint64_t m = std::max<std::uint64_t>(k + 1, 1); m <= x.size(); ++m) {
    Rational rx = rho(px, m);
    Rational ru = rho(punion, m);
    Rational rr = rho(prest, m);
    if (ru != rr + rx) {
      throw InvariantViolation("alpha_shift_check: additivity fails at m=" + std::to_string(m));
    }
    if (!(rx > q)) continue;
    AlphaWitness w{m, ru, rx, rr, rr > alpha - half_q};
    if (w.premise_holds && !(ru > alpha + half_q)) {
      throw InvariantViolation("alpha_shift_check: union density " + ru.str() +
                               " not above alpha + q/2 at m=" + std::to_string(m));
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace stochlab
