#include "stochlab/host_adaptive.hpp"

#include <algorithm>
#include <tuple>

namespace stochlab {

namespace {

/// Feeds g its own history; `visit(d)` returns false to stop before d is opened.
template <typename Visit>
void run_contestant(const AdaptiveContestant& g, const CarPredicate& is_car, Visit&& visit) {
  History hist;
  for (std::uint64_t step = 0;; ++step) {
    if (step >= g.budget) {
      throw BudgetExceeded("contestant '" + g.name + "' exceeded its budget of " +
                           std::to_string(g.budget) + " doors");
    }
    Door d = g.choose(hist);
    if (!hist.empty() && d <= hist.back().door) {
      throw ContractViolation("contestant '" + g.name + "' is not orderly: door " +
                                  std::to_string(d) + " after " +
                                  std::to_string(hist.back().door),
                              step);
    }
    if (!visit(d)) return;
    hist.push({d, is_car(d)});
  }
}

std::uint64_t count_between(const std::vector<Door>& sorted, Door lo, Door hi) {
  auto a = std::lower_bound(sorted.begin(), sorted.end(), lo);
  auto b = std::lower_bound(sorted.begin(), sorted.end(), hi);
  return static_cast<std::uint64_t>(b - a);
}

std::optional<std::size_t> first_sparse(const std::vector<Door>& opened,
                                        const DisorderedBlock& block, std::uint64_t s) {
  const auto& subs = block.sub_blocks();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (count_between(opened, subs[i].door_begin(), subs[i].door_end()) < s) return i;
  }
  return std::nullopt;
}

std::vector<Door> candidate_doors(const DisorderedBlock& block, const RestrictionLedger& ledger) {
  std::vector<Door> out;
  for (std::uint64_t i = 0; i < block.if_len(); ++i) {
    Door d = block.if_door(i);
    if (!ledger.constrained(d)) out.push_back(d);
  }
  return out;
}

std::vector<Door> mask_doors(const std::vector<Door>& cands, std::uint64_t mask) {
  std::vector<Door> x;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (mask >> i & 1U) x.push_back(cands[i]);
  }
  return x;
}

CarPredicate with_extra(const RestrictionLedger& ledger, const std::vector<Door>& x) {
  return [&ledger, &x](Door d) {
    return ledger.is_car(d) || std::binary_search(x.begin(), x.end(), d);
  };
}

void check_cap(const std::vector<Door>& cands, std::uint64_t cap) {
  if (cands.size() > cap || cands.size() >= 63) {
    throw InfeasibleError("witness search over " + std::to_string(cands.size()) +
                          " free IF doors exceeds the cap of " + std::to_string(cap));
  }
}

struct Best {
  std::size_t sb;
  std::vector<Door> x;

  bool better_than(const Best& o) const {
    return std::make_tuple(sb, x.size()) < std::make_tuple(o.sb, o.x.size()) ||
           (sb == o.sb && x.size() == o.x.size() && x < o.x);
  }
};

template <typename Fn>
auto guarded(std::size_t index, Fn&& fn) {
  try {
    return fn();
  } catch (const BudgetExceeded& e) {
    throw ContestantFault(index, e.what());
  } catch (const NestingError&) {
    throw;
  } catch (const ContractViolation& e) {
    throw ContestantFault(index, e.what());
  }
}

void adaptive_rec(const DisorderedBlock& block, const std::vector<AdaptiveContestant>& family,
                  std::vector<std::size_t> active, RestrictionLedger& ledger, std::uint64_t s,
                  std::uint64_t cap, Door top_last, AdaptiveOutcome& out) {
  std::optional<Best> best;
  if (!active.empty() && s > 0 && !block.sub_blocks().empty()) {
    const std::vector<Door> cands = candidate_doors(block, ledger);
    check_cap(cands, cap);
    const std::uint64_t masks = std::uint64_t{1} << cands.size();
    for (std::size_t idx : active) {
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        std::vector<Door> x = mask_doors(cands, mask);
        auto opened = guarded(idx, [&] {
          return eval_contestant(family[idx], with_extra(ledger, x), block.last_door());
        });
        auto sb = first_sparse(opened, block, s);
        if (!sb) continue;
        Best cand{*sb, std::move(x)};
        if (!best || cand.better_than(*best)) best = std::move(cand);
      }
    }
  }

  if (!best) {
    out.terminal_begin = block.door_begin();
    out.terminal_end = block.door_end();
    out.goats_in_terminal = ledger.goats_in(block.door_begin(), block.door_end());
    out.terminal_family = active;
    for (std::uint64_t i = 0; i < block.if_len(); ++i) {
      Door d = block.if_door(i);
      if (!ledger.is_goat(d)) ledger.force_car(d);
    }
    for (Door d = block.door_begin(); d < block.door_end(); ++d) {
      if (!ledger.is_car(d)) ledger.force_goat(d);
    }
    return;
  }

  const DisorderedBlock& sb = block.sub_blocks()[best->sb];
  std::vector<Door> x;
  for (Door d : best->x) {
    if (d < sb.door_begin()) x.push_back(d);
  }
  for (Door d : x) ledger.force_car(d);
  for (Door d = block.door_begin(); d < block.door_end(); ++d) {
    if (!sb.contains_door(d) && !ledger.is_car(d)) ledger.force_goat(d);
  }
  const CarPredicate cars_now = [&ledger](Door d) { return ledger.is_car(d); };
  // B is judged before the p-goats go in: the test rule already reads SB as goats
  std::vector<std::size_t> removed;
  std::vector<std::size_t> rest;
  for (std::size_t idx : active) {
    auto opened = guarded(idx, [&] {
      return eval_contestant(family[idx], cars_now, block.last_door());
    });
    if (count_between(opened, sb.door_begin(), sb.door_end()) < s) {
      removed.push_back(idx);
    } else {
      rest.push_back(idx);
    }
  }
  if (removed.empty()) {
    throw InvariantViolation("minimal witness at sub-block " + std::to_string(best->sb) +
                             " is sparse for no contestant");
  }
  for (std::size_t idx : active) {
    auto next = guarded(idx, [&] {
      return next_doors_from(family[idx], cars_now, sb.door_begin(), s);
    });
    for (Door d : next) {
      ledger.force_goat(d);
      if (d > top_last) out.spill.push_back(d);
    }
  }
  out.levels.push_back({best->sb, x, removed});
  adaptive_rec(sb, family, std::move(rest), ledger, s, cap, top_last, out);
}

}  // namespace

std::vector<Door> eval_contestant(const AdaptiveContestant& g, const CarPredicate& is_car,
                                  Door max_door) {
  std::vector<Door> out;
  run_contestant(g, is_car, [&](Door d) {
    if (d > max_door) return false;
    out.push_back(d);
    return true;
  });
  return out;
}

std::vector<Door> next_doors_from(const AdaptiveContestant& g, const CarPredicate& is_car,
                                  Door lo, std::uint64_t count) {
  std::vector<Door> out;
  if (count == 0) return out;
  run_contestant(g, is_car, [&](Door d) {
    if (d >= lo) out.push_back(d);
    return out.size() < count;
  });
  return out;
}

std::vector<SparsenessWitness> sparse_sb_adaptive(const AdaptiveContestant& g,
                                                  const DisorderedBlock& block,
                                                  const RestrictionLedger& ledger,
                                                  std::uint64_t s, std::uint64_t cap) {
  std::vector<SparsenessWitness> out;
  if (s == 0 || block.sub_blocks().empty()) return out;
  const std::vector<Door> cands = candidate_doors(block, ledger);
  check_cap(cands, cap);
  const auto& subs = block.sub_blocks();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cands.size()); ++mask) {
    std::vector<Door> x = mask_doors(cands, mask);
    auto opened = eval_contestant(g, with_extra(ledger, x), block.last_door());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (count_between(opened, subs[i].door_begin(), subs[i].door_end()) < s) {
        out.push_back({x, i});
      }
    }
  }
  return out;
}

AdaptiveOutcome update_cg_adaptive(const DisorderedBlock& block,
                                   const std::vector<AdaptiveContestant>& family,
                                   RestrictionLedger& ledger, std::uint64_t s,
                                   std::uint64_t witness_cap) {
  if (block.level() < family.size()) {
    throw NestingError("block of level " + std::to_string(block.level()) + " cannot host " +
                       std::to_string(family.size()) + " contestants");
  }
  if (block.empty()) throw ContractViolation("update_cg_adaptive on an empty block");
  if (ledger.cars_in(block.door_begin(), block.door_end()) != 0 ||
      ledger.goats_in(block.door_begin(), block.door_end()) != 0) {
    throw ContractViolation("ledger already constrains the block at door " +
                            std::to_string(block.door_begin()));
  }
  AdaptiveOutcome out;
  std::vector<std::size_t> active(family.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  adaptive_rec(block, family, std::move(active), ledger, s, witness_cap, block.last_door(), out);
  std::sort(out.spill.begin(), out.spill.end());
  out.spill.erase(std::unique(out.spill.begin(), out.spill.end()), out.spill.end());
  return out;
}

bool replay_consistent(const AdaptiveContestant& g, const CarPredicate& is_car, Door max_door) {
  const std::vector<Door> first = eval_contestant(g, is_car, max_door);
  const std::vector<Door> second = eval_contestant(g, is_car, max_door);
  if (first != second) return false;
  CarPredicate flipped = [&](Door d) {
    return std::binary_search(first.begin(), first.end(), d) ? is_car(d) : true;
  };
  return eval_contestant(g, flipped, max_door) == first;
}

AdaptiveAssignment build_adaptive_assignment(const std::vector<AdaptiveContestant>& family,
                                             const HostPermutation& h, std::uint64_t max_stages,
                                             std::uint64_t witness_cap) {
  AdaptiveAssignment out;
  std::vector<std::size_t> active;
  std::vector<bool> dropped(family.size(), false);
  Door filled_upto = 0;

  auto drop = [&](std::size_t idx, std::uint64_t s, const std::string& why) {
    dropped[idx] = true;
    out.dropped.push_back(idx);
    out.log.push_back("stage " + std::to_string(s) + ": dropped " + family[idx].name + ": " + why);
  };

  for (std::uint64_t s = 0; s < max_stages; ++s) {
    if (s < family.size()) active.push_back(s);
    AdaptiveStageReport report;
    report.stage = s;
    const DisorderedBlock* db = nullptr;
    for (;;) {
      report.members.clear();
      for (std::size_t idx : active) {
        if (!dropped[idx]) report.members.push_back(idx);
      }
      std::optional<Door> max_forced = out.ledger.max_constrained();
      db = nullptr;
      for (std::size_t n = 1; n < h.blocks.size(); ++n) {
        const DisorderedBlock& cand = h.blocks[n];
        if (cand.empty() || cand.level() < report.members.size()) continue;
        if (max_forced && cand.door_begin() <= *max_forced) continue;
        db = &cand;
        report.block_index = n;
        break;
      }
      if (!db) {
        out.failure = "stage " + std::to_string(s) + ": host has no block of level >= " +
                      std::to_string(report.members.size()) + " beyond door " +
                      (max_forced ? std::to_string(*max_forced) : std::string("-"));
        break;
      }
      RestrictionLedger snapshot = out.ledger;
      for (Door d = filled_upto; d < db->door_begin(); ++d) {
        if (!out.ledger.constrained(d)) out.ledger.force_goat(d);
      }
      std::vector<AdaptiveContestant> players;
      for (std::size_t idx : report.members) players.push_back(family[idx]);
      try {
        report.outcome =
            update_cg_adaptive(*db, players, out.ledger, report.block_index, witness_cap);
      } catch (const ContestantFault& e) {
        out.ledger = std::move(snapshot);
        drop(report.members[e.index()], s, e.what());
        continue;
      } catch (const InfeasibleError& e) {
        out.ledger = std::move(snapshot);
        out.failure = "stage " + std::to_string(s) + ": " + e.what();
        db = nullptr;
      }
      break;
    }
    if (!db) break;

    for (auto& lvl : report.outcome.levels) {
      for (auto& i : lvl.removed) i = report.members[i];
    }
    for (auto& i : report.outcome.terminal_family) i = report.members[i];
    filled_upto = db->door_end();

    const CarPredicate cars = [&](Door d) { return out.ledger.is_car(d); };
    for (std::size_t idx : report.members) {
      bool ok = false;
      try {
        ok = replay_consistent(family[idx], cars, db->last_door());
      } catch (const Error& e) {
        drop(idx, s, std::string("replay failed: ") + e.what());
        continue;
      }
      if (!ok) drop(idx, s, "inconsistent across replays");
    }
    out.stages.push_back(std::move(report));
  }

  out.a = BitPrefix(filled_upto);
  for (Door d = 0; d < filled_upto; ++d) {
    if (!out.ledger.constrained(d)) {
      throw InvariantViolation("door " + std::to_string(d) + " left unfilled");
    }
    if (out.ledger.is_car(d)) out.a.set(d, true);
  }
  return out;
}

AdaptivePCheck check_adaptive_P(const BitPrefix& a, const AdaptiveContestant& g, std::uint64_t t,
                                const DisorderedBlock& block, const RestrictionLedger* ledger) {
  AdaptivePCheck out;
  if (block.empty()) return out;
  std::uint64_t pending = 0;
  Door last_car = 0;
  bool unresolved = false;
  Door unresolved_door = 0;
  auto content = [&](Door d) -> bool {
    if (d < a.size()) return a[d];
    if (ledger && ledger->is_goat(d)) return false;
    if (ledger && ledger->is_car(d)) return true;
    unresolved = true;
    unresolved_door = d;
    return false;
  };
  try {
    run_contestant(g, content, [&](Door d) {
      if (pending == 0 && d > block.last_door()) return false;
      bool car = content(d);
      if (unresolved) return false;
      if (car) {
        if (pending > 0) {
          out.ok = false;
          out.reason = "car at door " + std::to_string(d) + " only " +
                       std::to_string(t - pending) + " goats after the car at door " +
                       std::to_string(last_car);
          return false;
        }
        if (block.contains_door(d)) {
          ++out.cars_in_block;
          pending = t;
          last_car = d;
        }
      } else if (pending > 0) {
        --pending;
      }
      return true;
    });
  } catch (const Error& e) {
    out.ok = false;
    out.reason = e.what();
    return out;
  }
  if (out.ok && unresolved) {
    out.ok = false;
    out.reason = "trace reaches door " + std::to_string(unresolved_door) +
                 " beyond the assignment";
  }
  return out;
}

AdaptiveContestant oblivious_all() {
  return {"oblivious-all", [](const History& h) -> Door { return h.empty() ? 0 : h.back().door + 1; }};
}

AdaptiveContestant stop_after_car() {
  return {"stop-after-car", [](const History& h) -> Door {
            if (h.empty()) return 0;
            Door d = h.back().door;
            return h.cars_seen > 0 ? 2 * d + 1 : d + 1;
          }};
}

AdaptiveContestant jump_after_car(std::uint64_t k) {
  if (k == 0) throw OutOfRangeError("jump-after-car needs k >= 1");
  return {"jump-after-car(" + std::to_string(k) + ")", [k](const History& h) -> Door {
            if (h.empty()) return 0;
            return h.back().car ? h.back().door + k : h.back().door + 1;
          }};
}

AdaptiveContestant parity_follower() {
  return {"parity-follower", [](const History& h) -> Door {
            if (h.empty()) return 0;
            Door d = h.back().door;
            if (d % 2 == 0 && h.back().car) return d + 1;
            return d % 2 == 0 ? d + 2 : d + 1;
          }};
}

}  // namespace stochlab
