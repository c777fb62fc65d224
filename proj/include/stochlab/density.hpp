#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stochlab/bit_prefix.hpp"
#include "stochlab/permutation.hpp"
#include "stochlab/rational.hpp"

namespace stochlab {

/// rho_n(A) = |A ∩ [0, n)| / n for 1 <= n <= A.size().
Rational rho(const BitPrefix& a, std::uint64_t n);

struct DensitySample {
  std::uint64_t n;
  Rational rho;
};

/// Every prefix density of a finite set, plus the tail extremes that stand in
/// for upper and lower density at desk scale.
struct DensityProfile {
  std::vector<DensitySample> samples;
  Rational max_rho;       // max over n >= n_min
  Rational min_rho_tail;  // min over n >= n_min
  std::uint64_t n_min = 1;
};

inline constexpr std::uint64_t kDefaultNMin = 8;

DensityProfile density_profile(const BitPrefix& a, std::uint64_t n_min = kDefaultNMin);

/// A total increasing map index -> door, evaluable on [0, domain_bound).
struct MonotoneSelector {
  std::string name;
  std::function<Door(std::uint64_t)> rule;
  std::uint64_t domain_bound = UINT64_MAX;
};

/// Bit t of the result is A(f(t)), for every t whose image lies inside A.
/// Throws ContractViolation naming t if f(t) <= f(t-1).
BitPrefix select_monotone(const MonotoneSelector& f, const BitPrefix& a);

/// A ⊕ B: A on even positions, B on odd positions.
BitPrefix join(const BitPrefix& a, const BitPrefix& b);

BitPrefix set_union(const BitPrefix& a, const BitPrefix& b);
BitPrefix set_difference(const BitPrefix& a, const BitPrefix& b);

struct AlphaWitness {
  std::uint64_t m;
  Rational union_density;      // rho_m(pi(Y ∪ X))
  Rational x_density;          // rho_m(pi(X))
  Rational remainder_density;  // rho_m(pi(Y \ X))
  bool premise_holds;          // remainder_density > alpha - q/2
};

/// Scans m in (k, size] for rho_m(pi(X)) > q and reports the density of
/// pi(Y ∪ X) there. Asserts the disjoint additivity identity at every m and,
/// at each witness whose premise holds, that the union density exceeds
/// alpha + q/2; a failed assertion throws InvariantViolation.
std::vector<AlphaWitness> alpha_shift_check(const BitPrefix& x, const BitPrefix& y,
                                            const FinitePermutation& pi, const Rational& q,
                                            const Rational& alpha, std::uint64_t k);

}  // namespace stochlab
