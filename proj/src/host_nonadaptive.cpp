#include "stochlab/host_nonadaptive.hpp"

#include <algorithm>

#include "stochlab/errors.hpp"

namespace stochlab {

std::vector<Door> doors_in_range(const MonotoneSelector& f, Door lo, Door hi,
                                 std::uint64_t budget) {
  std::vector<Door> out;
  Door prev = 0;
  for (std::uint64_t t = 0; t < f.domain_bound; ++t) {
    if (t >= budget) {
      throw BudgetExceeded("selector '" + f.name + "' needs more than " +
                           std::to_string(budget) + " evaluations to pass door " +
                           std::to_string(hi));
    }
    Door d = f.rule(t);
    if (t > 0 && d <= prev) throw ContractViolation("selector '" + f.name + "' is not increasing", t);
    prev = d;
    if (d >= hi) break;
    if (d >= lo) out.push_back(d);
  }
  return out;
}

namespace {

std::uint64_t count_between(const std::vector<Door>& sorted, Door lo, Door hi) {
  if (hi <= lo) return 0;
  auto a = std::lower_bound(sorted.begin(), sorted.end(), lo);
  auto b = std::lower_bound(sorted.begin(), sorted.end(), hi);
  return static_cast<std::uint64_t>(b - a);
}

void check_fresh(const DisorderedBlock& block, const RestrictionLedger& ledger) {
  if (ledger.cars_in(block.door_begin(), block.door_end()) != 0 ||
      ledger.goats_in(block.door_begin(), block.door_end()) != 0) {
    throw ContractViolation("ledger already constrains the block at door " +
                            std::to_string(block.door_begin()));
  }
}

void fill_dense(const DisorderedBlock& block, RestrictionLedger& ledger, UpdateOutcome& out) {
  out.terminal_begin = block.door_begin();
  out.terminal_end = block.door_end();
  out.goats_in_terminal = ledger.goats_in(block.door_begin(), block.door_end());
  for (std::uint64_t i = 0; i < block.if_len(); ++i) {
    Door d = block.if_door(i);
    if (!ledger.is_goat(d)) ledger.force_car(d);
  }
  for (Door d = block.door_begin(); d < block.door_end(); ++d) {
    if (!ledger.is_car(d)) ledger.force_goat(d);
  }
}

void update_rec(const DisorderedBlock& block, const std::vector<std::vector<Door>>& doors,
                std::vector<std::size_t> active, RestrictionLedger& ledger, std::uint64_t s,
                UpdateOutcome& out) {
  for (std::size_t pos = 0; pos < active.size(); ++pos) {
    const std::size_t idx = active[pos];
    auto sb_index = sparse_sb0(doors[idx], block, s);
    if (!sb_index) continue;
    const DisorderedBlock& sb = block.sub_blocks()[*sb_index];
    ledger.force_goats(block.door_begin(), sb.door_begin());
    ledger.force_goats(sb.door_end(), block.door_end());
    auto lo = std::lower_bound(doors[idx].begin(), doors[idx].end(), sb.door_begin());
    for (auto it = lo; it != doors[idx].end() && *it < sb.door_end(); ++it) {
      ledger.force_goat(*it);
    }
    out.removed.push_back(idx);
    out.path.push_back(*sb_index);
    ++out.depth;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
    update_rec(sb, doors, std::move(active), ledger, s, out);
    return;
  }
  out.terminal_family = active;
  fill_dense(block, ledger, out);
}

}  // namespace

std::optional<std::size_t> sparse_sb0(const std::vector<Door>& f_doors,
                                      const DisorderedBlock& block, std::uint64_t s) {
  const auto& subs = block.sub_blocks();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (count_between(f_doors, subs[i].door_begin(), subs[i].door_end()) < s) return i;
  }
  return std::nullopt;
}

UpdateOutcome update_cg(const DisorderedBlock& block,
                        const std::vector<std::vector<Door>>& family_doors,
                        RestrictionLedger& ledger, std::uint64_t s) {
  if (block.level() < family_doors.size()) {
    throw NestingError("block of level " + std::to_string(block.level()) + " cannot host " +
                       std::to_string(family_doors.size()) + " opponents");
  }
  check_fresh(block, ledger);
  UpdateOutcome out;
  std::vector<std::size_t> active(family_doors.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  update_rec(block, family_doors, std::move(active), ledger, s, out);
  return out;
}

UpdateOutcome update_cg1(const DisorderedBlock& block, const std::vector<Door>& f_doors,
                         RestrictionLedger& ledger, std::uint64_t s) {
  // no nesting requirement: a level-0 block is vacuously dense
  check_fresh(block, ledger);
  UpdateOutcome out;
  update_rec(block, {f_doors}, {0}, ledger, s, out);
  return out;
}

HostAssignment build_host_assignment(const std::vector<MonotoneSelector>& family,
                                     const HostPermutation& h, std::uint64_t budget) {
  HostAssignment out;
  std::vector<bool> dropped(family.size(), false);
  for (std::uint64_t s = 1; s <= h.stages(); ++s) {
    const DisorderedBlock& block = h.blocks[s];
    StageReport report;
    report.stage = s;
    std::vector<std::vector<Door>> doors;
    for (std::size_t idx = 0; idx < family.size() && report.members.size() < s; ++idx) {
      if (dropped[idx]) continue;
      try {
        doors.push_back(doors_in_range(family[idx], block.door_begin(), block.door_end(), budget));
        report.members.push_back(idx);
      } catch (const BudgetExceeded& e) {
        dropped[idx] = true;
        out.dropped.push_back(idx);
        out.log.push_back("stage " + std::to_string(s) + ": dropped " + family[idx].name + ": " +
                          e.what());
      } catch (const ContractViolation& e) {
        dropped[idx] = true;
        out.dropped.push_back(idx);
        out.log.push_back("stage " + std::to_string(s) + ": dropped " + family[idx].name + ": " +
                          e.what());
      }
    }
    report.outcome = update_cg(block, doors, out.ledger, s);
    for (auto& i : report.outcome.removed) i = report.members[i];
    for (auto& i : report.outcome.terminal_family) i = report.members[i];
    out.stages.push_back(std::move(report));
  }

  out.a = BitPrefix(h.total_len);
  for (Door d = 0; d < h.total_len; ++d) {
    if (!out.ledger.constrained(d)) {
      throw InvariantViolation("door " + std::to_string(d) + " left unfilled");
    }
    if (out.ledger.is_car(d)) out.a.set(d, true);
  }
  return out;
}

std::optional<std::uint64_t> check_G(const BitPrefix& a, const HostPermutation& h,
                                     std::uint64_t s) {
  // received[t] for the initial run of times whose doors A covers
  std::vector<std::uint64_t> prefix{0};
  for (Time t = 0; t < h.total_len; ++t) {
    Door d = h_eval(h, t);
    if (d >= a.size()) break;
    prefix.push_back(prefix.back() + (a[d] ? 1 : 0));
  }
  const std::uint64_t horizon = prefix.size() - 1;
  for (std::uint64_t n = s + 1; n * (s + 1) <= horizon; ++n) {
    if (prefix[n * (s + 1)] >= n * s) return n;
  }
  return std::nullopt;
}

PCheck check_P(const BitPrefix& a, const std::vector<Door>& f_doors, std::uint64_t s,
               Door from_door) {
  PCheck out;
  std::optional<Door> prev;
  for (Door d = from_door; d < a.size(); ++d) {
    if (!a[d]) continue;
    if (prev) {
      ++out.pairs;
      std::uint64_t c = count_between(f_doors, *prev, d + 1);
      if (c < s) {
        out.ok = false;
        out.left = *prev;
        out.right = d;
        out.count = c;
        return out;
      }
    }
    prev = d;
  }
  return out;
}

PCheck received_car_spacing(const BitPrefix& a, const std::vector<Door>& f_doors,
                            std::uint64_t s, Door from_door) {
  PCheck out;
  std::optional<std::size_t> prev;
  for (std::size_t j = 0; j < f_doors.size(); ++j) {
    Door d = f_doors[j];
    if (d < from_door || d >= a.size() || !a[d]) continue;
    if (prev) {
      ++out.pairs;
      std::uint64_t goats = j - *prev - 1;
      if (goats < s) {
        out.ok = false;
        out.left = f_doors[*prev];
        out.right = d;
        out.count = goats;
        return out;
      }
    }
    prev = j;
  }
  return out;
}

}  // namespace stochlab
