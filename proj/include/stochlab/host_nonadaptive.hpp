#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stochlab/bit_prefix.hpp"
#include "stochlab/density.hpp"
#include "stochlab/disordered_block.hpp"
#include "stochlab/ledger.hpp"

namespace stochlab {

/// Doors in [lo, hi) opened by f, increasing. Evaluates f from index 0 until
/// its image reaches hi or its domain bound. Throws BudgetExceeded after
/// `budget` evaluations and ContractViolation if f is not increasing.
std::vector<Door> doors_in_range(const MonotoneSelector& f, Door lo, Door hi,
                                 std::uint64_t budget);

/// Index of the first sub-block where f opens fewer than s doors; nullopt
/// when f is dense or the block has no sub-blocks.
std::optional<std::size_t> sparse_sb0(const std::vector<Door>& f_doors,
                                      const DisorderedBlock& block, std::uint64_t s);

struct UpdateOutcome {
  /// Family indices removed, outermost first, with the sub-block index taken.
  std::vector<std::size_t> removed;
  std::vector<std::size_t> path;
  std::uint64_t depth = 0;
  /// Door range of the component that received the cars.
  Door terminal_begin = 0;
  Door terminal_end = 0;
  /// Goats already forced inside that component before the cars went in.
  std::uint64_t goats_in_terminal = 0;
  std::vector<std::size_t> terminal_family;
};

/// Fills every door of `block` for the opponents whose doors (restricted to
/// the block) are given. Requires a fresh ledger on the block and
/// block.level() >= family size.
UpdateOutcome update_cg(const DisorderedBlock& block,
                        const std::vector<std::vector<Door>>& family_doors,
                        RestrictionLedger& ledger, std::uint64_t s);

/// The single-opponent strategy. Any level works; level 0 is vacuously dense.
UpdateOutcome update_cg1(const DisorderedBlock& block, const std::vector<Door>& f_doors,
                         RestrictionLedger& ledger, std::uint64_t s);

struct StageReport {
  std::uint64_t stage = 0;
  std::vector<std::size_t> members;  // family indices in F_s
  UpdateOutcome outcome;
};

struct HostAssignment {
  BitPrefix a;
  RestrictionLedger ledger;
  std::vector<StageReport> stages;
  std::vector<std::size_t> dropped;
  std::vector<std::string> log;
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

/// Stage s (1-based) plays F_s = the first s members not yet dropped inside
/// DB_s. A member that exceeds the budget or is not increasing is dropped
/// for good and logged.
HostAssignment build_host_assignment(const std::vector<MonotoneSelector>& family,
                                     const HostPermutation& h,
                                     std::uint64_t budget = kDefaultBudget);

/// Least n > s with |[0, n(s+1)) ∩ h^{-1}(A)| >= n*s over the times whose
/// doors A covers.
std::optional<std::uint64_t> check_G(const BitPrefix& a, const HostPermutation& h,
                                     std::uint64_t s);

struct PCheck {
  bool ok = true;
  std::uint64_t pairs = 0;
  /// First failing pair and its count when !ok.
  Door left = 0;
  Door right = 0;
  std::uint64_t count = 0;
};

/// For consecutive cars a < b of A with a >= from_door:
/// |[a, b] ∩ f_doors| >= s.
PCheck check_P(const BitPrefix& a, const std::vector<Door>& f_doors, std::uint64_t s,
               Door from_door);

/// Between consecutive cars that f itself receives (at doors >= from_door),
/// f opens at least s goats.
PCheck received_car_spacing(const BitPrefix& a, const std::vector<Door>& f_doors,
                            std::uint64_t s, Door from_door);

}  // namespace stochlab
