#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stochlab/bit_prefix.hpp"
#include "stochlab/disordered_block.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/ledger.hpp"

namespace stochlab {

struct Observation {
  Door door;
  bool car;

  bool operator==(const Observation&) const = default;
};

/// What a contestant has seen so far.
struct History {
  std::vector<Observation> obs;
  std::uint64_t cars_seen = 0;

  bool empty() const { return obs.empty(); }
  const Observation& back() const { return obs.back(); }
  void push(Observation o) {
    obs.push_back(o);
    if (o.car) ++cars_seen;
  }
};

inline constexpr std::uint64_t kDefaultContestantBudget = std::uint64_t{1} << 24;

/// g(X, x): the next door as a function of the contents seen so far. Passing
/// only the history makes consistency hold by construction; replays still
/// catch contestants that carry hidden state.
struct AdaptiveContestant {
  std::string name;
  std::function<Door(const History&)> choose;
  std::uint64_t budget = kDefaultContestantBudget;
};

using CarPredicate = std::function<bool(Door)>;

/// Doors g opens while they stay <= max_door. Throws BudgetExceeded or
/// ContractViolation (orderliness, naming the step).
std::vector<Door> eval_contestant(const AdaptiveContestant& g, const CarPredicate& is_car,
                                  Door max_door);

/// First `count` doors g opens at or beyond `lo`.
std::vector<Door> next_doors_from(const AdaptiveContestant& g, const CarPredicate& is_car,
                                  Door lo, std::uint64_t count);

struct SparsenessWitness {
  std::vector<Door> x;
  std::size_t sub_block;

  bool operator==(const SparsenessWitness&) const = default;
};

inline constexpr std::uint64_t kDefaultWitnessCap = 16;

/// Every (X, SB) with X ⊆ IF - G and fewer than s doors of g(C ∪ X) in SB.
/// Throws InfeasibleError when |IF - G| exceeds `cap`.
std::vector<SparsenessWitness> sparse_sb_adaptive(const AdaptiveContestant& g,
                                                  const DisorderedBlock& block,
                                                  const RestrictionLedger& ledger,
                                                  std::uint64_t s,
                                                  std::uint64_t cap = kDefaultWitnessCap);

/// A contestant misbehaved during a strategy computation.
class ContestantFault : public Error {
 public:
  ContestantFault(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct AdaptiveLevel {
  std::size_t sub_block;
  std::vector<Door> x;
  std::vector<std::size_t> removed;  // B, as family indices
};

struct AdaptiveOutcome {
  std::vector<AdaptiveLevel> levels;
  Door terminal_begin = 0;
  Door terminal_end = 0;
  std::uint64_t goats_in_terminal = 0;
  std::vector<std::size_t> terminal_family;
  /// Goats forced past the block, left for later padding.
  std::vector<Door> spill;
};

/// Requires block.level() >= family.size() and a ledger fresh on the block.
/// Contestant errors surface as ContestantFault with the family index.
AdaptiveOutcome update_cg_adaptive(const DisorderedBlock& block,
                                   const std::vector<AdaptiveContestant>& family,
                                   RestrictionLedger& ledger, std::uint64_t s,
                                   std::uint64_t witness_cap = kDefaultWitnessCap);

struct AdaptiveStageReport {
  std::uint64_t stage = 0;
  std::uint64_t block_index = 0;  // n_s
  std::vector<std::size_t> members;
  AdaptiveOutcome outcome;
};

struct AdaptiveAssignment {
  BitPrefix a;
  RestrictionLedger ledger;
  std::vector<AdaptiveStageReport> stages;
  std::vector<std::size_t> dropped;
  std::vector<std::string> log;
  /// Set when a stage could not run; stages before it are complete.
  std::optional<std::string> failure;
};

/// Stage s (0-based) adds g_s, works in the least block DB^n beyond every
/// forced door with level >= |F|, pads goats below it and runs the strategy
/// with threshold n.
AdaptiveAssignment build_adaptive_assignment(const std::vector<AdaptiveContestant>& family,
                                             const HostPermutation& h, std::uint64_t max_stages,
                                             std::uint64_t witness_cap = kDefaultWitnessCap);

struct AdaptivePCheck {
  bool ok = true;
  std::uint64_t cars_in_block = 0;
  std::string reason;
};

/// Every car g receives inside `block` is followed by at least t goats in
/// g's trace against A. Doors past A are read from the ledger's goats when
/// given; a trace that cannot be resolved fails.
AdaptivePCheck check_adaptive_P(const BitPrefix& a, const AdaptiveContestant& g, std::uint64_t t,
                                const DisorderedBlock& block,
                                const RestrictionLedger* ledger = nullptr);

/// Runs g twice against `a` and once with every unopened door flipped to a
/// car; true iff the three traces agree.
bool replay_consistent(const AdaptiveContestant& g, const CarPredicate& is_car, Door max_door);

AdaptiveContestant oblivious_all();
/// Opens every door until its first car, then d -> 2d+1.
AdaptiveContestant stop_after_car();
/// d+1 normally, d+k right after a car.
AdaptiveContestant jump_after_car(std::uint64_t k);
/// Opens the evens, plus the odd door right after an even car.
AdaptiveContestant parity_follower();

}  // namespace stochlab
