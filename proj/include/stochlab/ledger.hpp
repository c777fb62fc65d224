#pragma once

#include <cstdint>
#include <optional>
#include <set>

#include "stochlab/types.hpp"

namespace stochlab {

/// Car-forced doors C and goat-forced doors G, kept disjoint.
class RestrictionLedger {
 public:
  /// Both throw InvariantViolation when the door is already forced the other way.
  void force_car(Door d);
  void force_goat(Door d);
  void force_goats(Door lo, Door hi);

  bool is_car(Door d) const { return cars_.count(d) != 0; }
  bool is_goat(Door d) const { return goats_.count(d) != 0; }
  bool constrained(Door d) const { return is_car(d) || is_goat(d); }

  /// Number of forced doors in [lo, hi).
  std::uint64_t cars_in(Door lo, Door hi) const;
  std::uint64_t goats_in(Door lo, Door hi) const;

  std::optional<Door> max_constrained() const;

  const std::set<Door>& cars() const { return cars_; }
  const std::set<Door>& goats() const { return goats_; }

  bool operator==(const RestrictionLedger&) const = default;

 private:
  std::set<Door> cars_;
  std::set<Door> goats_;
};

}  // namespace stochlab
