#include "stochlab/ledger.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "stochlab/errors.hpp"

namespace stochlab {

void RestrictionLedger::force_car(Door d) {
  if (is_goat(d)) throw InvariantViolation("door " + std::to_string(d) + " is already a goat");
  cars_.insert(d);
}

void RestrictionLedger::force_goat(Door d) {
  if (is_car(d)) throw InvariantViolation("door " + std::to_string(d) + " is already a car");
  goats_.insert(d);
}

void RestrictionLedger::force_goats(Door lo, Door hi) {
  for (Door d = lo; d < hi; ++d) force_goat(d);
}

namespace {

std::uint64_t count_in(const std::set<Door>& s, Door lo, Door hi) {
  if (hi <= lo) return 0;
  return static_cast<std::uint64_t>(std::distance(s.lower_bound(lo), s.lower_bound(hi)));
}

}  // namespace

std::uint64_t RestrictionLedger::cars_in(Door lo, Door hi) const { return count_in(cars_, lo, hi); }

std::uint64_t RestrictionLedger::goats_in(Door lo, Door hi) const {
  return count_in(goats_, lo, hi);
}

std::optional<Door> RestrictionLedger::max_constrained() const {
  std::optional<Door> out;
  if (!cars_.empty()) out = *cars_.rbegin();
  if (!goats_.empty()) out = std::max(out.value_or(0), *goats_.rbegin());
  return out;
}

}  // namespace stochlab
