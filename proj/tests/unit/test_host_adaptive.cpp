#include "doctest.h"

#include <algorithm>
#include <memory>
#include <set>

#include "stochlab/errors.hpp"
#include "stochlab/host_adaptive.hpp"
#include "stochlab/host_nonadaptive.hpp"

using namespace stochlab;

namespace {

CarPredicate cars_at(std::set<Door> cars) {
  return [cars](Door d) { return cars.count(d) != 0; };
}

std::vector<Door> cars_of(const RestrictionLedger& l) { return {l.cars().begin(), l.cars().end()}; }

// Opens the IF doors of a fixed(3) level-1 block at 0 (0, 4, 8), then every
// door from 12 on.
AdaptiveContestant if_then_beyond() {
  return {"if-then-beyond", [](const History& h) -> Door {
            if (h.empty()) return 0;
            Door d = h.back().door;
            return d <= 8 ? d + 4 : d + 1;
          }};
}

}  // namespace

TEST_CASE("eval_contestant") {
  CHECK(eval_contestant(oblivious_all(), cars_at({}), 5) == std::vector<Door>{0, 1, 2, 3, 4, 5});
  CHECK(eval_contestant(parity_follower(), cars_at({4}), 9) ==
        std::vector<Door>{0, 2, 4, 5, 6, 8});
  CHECK(eval_contestant(stop_after_car(), cars_at({2}), 40) ==
        std::vector<Door>{0, 1, 2, 5, 11, 23});
  CHECK(eval_contestant(jump_after_car(4), cars_at({1}), 8) == std::vector<Door>{0, 1, 5, 6, 7, 8});
  CHECK_THROWS_AS(jump_after_car(0), Error);

  AdaptiveContestant back{"back", [](const History& h) -> Door {
                            return h.obs.size() == 3 ? 0 : h.obs.size();
                          }};
  try {
    eval_contestant(back, cars_at({}), 10);
    FAIL("expected an orderliness error");
  } catch (const ContractViolation& e) {
    CHECK(e.step() == 3);
  }

  AdaptiveContestant slow = oblivious_all();
  slow.budget = 3;
  CHECK_THROWS_AS(eval_contestant(slow, cars_at({}), 10), BudgetExceeded);
  CHECK(next_doors_from(stop_after_car(), cars_at({0}), 2, 2) == std::vector<Door>{3, 7});
}

TEST_CASE("sparse_sb_adaptive") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  RestrictionLedger none;
  CHECK(sparse_sb_adaptive(oblivious_all(), b, none, 3).empty());
  CHECK(sparse_sb_adaptive(oblivious_all(), b, none, 0).empty());

  // after a car at 0 the doubling contestant opens 1, 3, 7, 15: one door in SB_1
  auto ws = sparse_sb_adaptive(stop_after_car(), b, none, 2);
  bool saw = false;
  for (const auto& w : ws) {
    if (w.x == std::vector<Door>{0} && w.sub_block == 1) saw = true;
    CHECK_FALSE(w.x.empty());
  }
  CHECK(saw);

  DisorderedBlock wide = build_block(1, 0, 0, BlockSizing::fixed(20));
  CHECK_THROWS_AS(sparse_sb_adaptive(oblivious_all(), wide, none, 1, 16), InfeasibleError);
  RestrictionLedger goats;
  for (std::uint64_t i = 0; i < 5; ++i) goats.force_goat(wide.if_door(i));
  CHECK_NOTHROW(sparse_sb_adaptive(oblivious_all(), wide, goats, 1, 16));
}

TEST_CASE("update_cg_adaptive dense branch") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  RestrictionLedger empty;
  update_cg_adaptive(b, {}, empty, 1);
  CHECK(cars_of(empty) == b.if_doors());

  RestrictionLedger l;
  AdaptiveOutcome out = update_cg_adaptive(b, {oblivious_all()}, l, 2);
  CHECK(out.levels.empty());
  CHECK(cars_of(l) == std::vector<Door>{0, 4, 8});
  BitPrefix a(12);
  for (Door d : l.cars()) a.set(d, true);
  CHECK(check_adaptive_P(a, oblivious_all(), 2, b, &l).ok);
}

TEST_CASE("update_cg_adaptive sparse branch picks the minimal witness") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  RestrictionLedger l;
  AdaptiveOutcome out = update_cg_adaptive(b, {stop_after_car()}, l, 2);
  REQUIRE(out.levels.size() == 1);
  // SB_1 is the earliest sub-block with a witness; X = {0} is the smallest
  CHECK(out.levels[0].sub_block == 1);
  CHECK(out.levels[0].x == std::vector<Door>{0});
  CHECK(out.levels[0].removed == std::vector<std::size_t>{0});
  CHECK(l.is_car(0));
  // goats on the next 2 doors from 5 given the car at 0: 7 and 15
  CHECK(l.is_goat(7));
  CHECK(out.spill == std::vector<Door>{15});
  CHECK(l.is_goat(15));
  for (Door d = 5; d < 8; ++d) CHECK((l.is_car(d) != l.is_goat(d)));
}

TEST_CASE("goats forced past the block are recorded as spill") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  RestrictionLedger l;
  AdaptiveOutcome out = update_cg_adaptive(b, {if_then_beyond()}, l, 3);
  REQUIRE(out.levels.size() == 1);
  CHECK(out.levels[0].sub_block == 0);
  CHECK(out.levels[0].x.empty());
  CHECK(out.spill == std::vector<Door>{12});
  CHECK(l.is_goat(4));
  CHECK(l.is_goat(8));
  CHECK(l.is_goat(12));
}

TEST_CASE("update_cg_adaptive preconditions") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  RestrictionLedger l;
  CHECK_THROWS_AS(update_cg_adaptive(b, {oblivious_all(), oblivious_all()}, l, 1), NestingError);
  l.force_goat(3);
  CHECK_THROWS_AS(update_cg_adaptive(b, {oblivious_all()}, l, 1), ContractViolation);
}

TEST_CASE("build_adaptive_assignment on the stage-1 host") {
  HostPermutation h = construct_h(1);
  AdaptiveAssignment none = build_adaptive_assignment({}, h, 1);
  CHECK(none.a.members() == std::vector<Door>{0, 5});
  CHECK_FALSE(none.failure.has_value());

  AdaptiveAssignment run = build_adaptive_assignment({oblivious_all(), stop_after_car()}, h, 2);
  REQUIRE(run.stages.size() == 1);
  CHECK(run.stages[0].block_index == 1);
  CHECK(run.a.members() == std::vector<Door>{0, 5});
  REQUIRE(run.failure.has_value());
  CHECK(run.failure->find("stage 1") != std::string::npos);
  CHECK(check_G(run.a, h, 1) == 2u);
  CHECK(check_adaptive_P(run.a, oblivious_all(), 1, h.blocks[1], &run.ledger).ok);
}

TEST_CASE("build_adaptive_assignment on a fixed-sizing host") {
  HostPermutation h = construct_h_fixed(4, 3);
  std::vector<AdaptiveContestant> fam = {oblivious_all(), stop_after_car(), jump_after_car(4)};
  AdaptiveAssignment run = build_adaptive_assignment(fam, h, 3);
  CHECK_FALSE(run.failure.has_value());
  REQUIRE(run.stages.size() == 3);
  std::uint64_t last = 0;
  for (const auto& st : run.stages) {
    CHECK(st.block_index > last);
    CHECK(h.blocks[st.block_index].level() >= st.members.size());
    last = st.block_index;
  }
  for (Door d : run.ledger.goats()) {
    if (d < run.a.size()) CHECK_FALSE(run.a.at(d));
  }
  for (Door d : run.ledger.cars()) CHECK(run.a.at(d));
  for (Door d = 0; d < run.a.size(); ++d) CHECK(run.ledger.constrained(d));
}

TEST_CASE("contestant faults drop the contestant and rerun the stage") {
  HostPermutation h = construct_h_fixed(3, 3);
  AdaptiveContestant bad{"bad", [](const History& hist) -> Door {
                           return hist.obs.size() == 5 ? 1 : hist.obs.size();
                         }};
  AdaptiveAssignment run = build_adaptive_assignment({oblivious_all(), bad}, h, 2);
  CHECK(run.dropped == std::vector<std::size_t>{1});
  CHECK_FALSE(run.log.empty());
  CHECK_FALSE(run.failure.has_value());
}

TEST_CASE("check_adaptive_P") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  CHECK(check_adaptive_P(BitPrefix(12), oblivious_all(), 3, b).ok);
  BitPrefix close = BitPrefix::from_members(12, std::vector<Door>{2, 4});
  AdaptivePCheck p = check_adaptive_P(close, oblivious_all(), 2, b);
  CHECK_FALSE(p.ok);
  CHECK(p.reason.find("door 4") != std::string::npos);
  // the trace runs past A with no ledger to settle it
  BitPrefix tail = BitPrefix::from_members(12, std::vector<Door>{11});
  CHECK_FALSE(check_adaptive_P(tail, oblivious_all(), 1, b).ok);
  RestrictionLedger l;
  l.force_goat(12);
  CHECK(check_adaptive_P(tail, oblivious_all(), 1, b, &l).ok);
}

TEST_CASE("replay consistency catches hidden state") {
  CHECK(replay_consistent(parity_follower(), cars_at({4, 10}), 30));
  auto calls = std::make_shared<std::uint64_t>(0);
  AdaptiveContestant sneaky{"sneaky", [calls](const History& h) -> Door {
                              if (h.empty()) ++*calls;
                              return h.empty() ? 0 : h.back().door + 1 + (*calls % 2);
                            }};
  CHECK_FALSE(replay_consistent(sneaky, cars_at({}), 30));
}
