#include "doctest.h"

#include "stochlab/errors.hpp"
#include "stochlab/host_nonadaptive.hpp"
#include "stochlab/strategies.hpp"

using namespace stochlab;

namespace {

std::vector<Door> range(Door lo, Door hi) {
  std::vector<Door> out;
  for (Door d = lo; d < hi; ++d) out.push_back(d);
  return out;
}

std::vector<Door> cars_of(const RestrictionLedger& l) { return {l.cars().begin(), l.cars().end()}; }

bool fills(const RestrictionLedger& l, const DisorderedBlock& b) {
  for (Door d = b.door_begin(); d < b.door_end(); ++d) {
    if (l.is_car(d) == l.is_goat(d)) return false;
  }
  return true;
}

MonotoneSelector far_away() {
  return {"far-away", [](std::uint64_t t) { return (std::uint64_t{1} << 40) + t; }};
}

HostPermutation translation_host(std::uint64_t len) {
  HostPermutation h;
  h.blocks = {DisorderedBlock::translation(0, 0, 0), DisorderedBlock::translation(0, 0, len)};
  h.total_len = len;
  return h;
}

}  // namespace

TEST_CASE("ledger keeps cars and goats apart") {
  RestrictionLedger l;
  l.force_car(3);
  l.force_goats(0, 3);
  CHECK(l.is_car(3));
  CHECK(l.goats_in(0, 10) == 3);
  CHECK_THROWS_AS(l.force_goat(3), InvariantViolation);
  CHECK_THROWS_AS(l.force_car(1), InvariantViolation);
  l.force_car(3);
  CHECK(l.cars_in(0, 10) == 1);
  CHECK(l.max_constrained() == 3u);
}

TEST_CASE("sparse_sb0") {
  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  // doors: IF 0, SB_0 [1,4), IF 4, SB_1 [5,8), IF 8, SB_2 [9,12)
  CHECK_FALSE(sparse_sb0(range(0, 12), b, 3).has_value());
  CHECK(sparse_sb0({}, b, 1) == 0u);
  CHECK(sparse_sb0({1, 2, 5, 9, 10}, b, 2) == 1u);
  CHECK_FALSE(sparse_sb0({}, DisorderedBlock::translation(0, 0, 5), 1).has_value());
}

TEST_CASE("update_cg1 branches") {
  DisorderedBlock leaf = DisorderedBlock::translation(0, 0, 4);
  RestrictionLedger l0;
  update_cg1(leaf, {}, l0, 3);
  CHECK(cars_of(l0) == range(0, 4));

  DisorderedBlock b = build_block(1, 0, 0, BlockSizing::fixed(3));
  RestrictionLedger dense;
  UpdateOutcome d = update_cg1(b, range(0, 12), dense, 2);
  CHECK(cars_of(dense) == std::vector<Door>{0, 4, 8});
  CHECK(d.depth == 0);
  CHECK(fills(dense, b));

  RestrictionLedger sparse;
  UpdateOutcome s = update_cg1(b, {}, sparse, 1);
  CHECK(cars_of(sparse) == range(1, 4));
  CHECK(s.removed == std::vector<std::size_t>{0});
  CHECK(s.terminal_begin == 1);
  CHECK(s.terminal_end == 4);
  CHECK(fills(sparse, b));
}

TEST_CASE("update_cg recursion") {
  DisorderedBlock b2 = build_block(2, 0, 0, BlockSizing::fixed(2));
  RestrictionLedger none;
  update_cg(b2, {}, none, 1);
  CHECK(cars_of(none) == b2.if_doors());

  // the empty-image member is sparse at SB_0; identity is left for the inside
  RestrictionLedger two;
  UpdateOutcome out = update_cg(b2, {range(0, b2.size()), {}}, two, 1);
  CHECK(out.removed == std::vector<std::size_t>{1});
  CHECK(out.depth == 1);
  CHECK(cars_of(two) == b2.sub_blocks()[0].if_doors());
  CHECK(fills(two, b2));

  CHECK_THROWS_AS(update_cg(build_block(1, 0, 0, BlockSizing::fixed(2)), {{}, {}}, none, 1),
                  NestingError);
  RestrictionLedger stale;
  stale.force_goat(b2.door_begin());
  CHECK_THROWS_AS(update_cg(b2, {}, stale, 1), ContractViolation);
}

TEST_CASE("goat budget inside the terminal component") {
  HostPermutation h = construct_h_fixed(3, 6);
  std::vector<MonotoneSelector> fam = {make_selector("linear(3)"), make_selector("polynomial(2)"),
                                       make_selector("identity")};
  HostAssignment run = build_host_assignment(fam, h);
  for (const auto& st : run.stages) {
    CHECK(st.outcome.depth <= st.members.size());
    CHECK(st.outcome.goats_in_terminal <= st.stage * st.members.size());
    CHECK(st.outcome.removed.size() == st.outcome.depth);
  }
}

TEST_CASE("build_host_assignment at stage 1") {
  HostPermutation h = construct_h(1);
  HostAssignment empty = build_host_assignment({}, h);
  CHECK(empty.a.members() == std::vector<Door>{0, 5});

  HostAssignment id = build_host_assignment({make_selector("identity")}, h);
  CHECK(id.a.members() == std::vector<Door>{0, 5});
  CHECK(check_G(id.a, h, 1) == 2u);
  CHECK(check_P(id.a, range(0, 14), 1, 0).ok);
  REQUIRE(id.stages.size() == 1);
  CHECK(id.stages[0].members == std::vector<std::size_t>{0});
}

TEST_CASE("faulty members are dropped and logged") {
  HostPermutation h = construct_h_fixed(2, 3);
  MonotoneSelector bad{"bad", [](std::uint64_t t) { return t == 2 ? std::uint64_t{0} : t; }};
  HostAssignment run = build_host_assignment({bad, make_selector("identity")}, h);
  CHECK(run.dropped == std::vector<std::size_t>{0});
  REQUIRE(run.log.size() == 1);
  CHECK(run.log[0].find("bad") != std::string::npos);
  CHECK(run.stages[0].members == std::vector<std::size_t>{1});

  HostAssignment slow = build_host_assignment({make_selector("identity")}, h, 5);
  CHECK(slow.dropped == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(doors_in_range(make_selector("identity"), 0, 100, 5), BudgetExceeded);
}

TEST_CASE("a member that skips the block is sparse everywhere") {
  HostPermutation h = construct_h_fixed(2, 3);
  HostAssignment run = build_host_assignment({far_away(), make_selector("identity")}, h);
  CHECK(run.stages[1].outcome.removed.front() == 0);
}

TEST_CASE("check_G") {
  HostPermutation h = translation_host(8);
  BitPrefix ones = BitPrefix::from_string("11111111");
  CHECK(check_G(ones, h, 1) == 2u);
  CHECK_FALSE(check_G(BitPrefix(8), h, 1).has_value());
  // |[0, 3n) ∩ A| >= 2n first holds at n = 3 for A = {0,1,2,4,5,6,7}
  BitPrefix holes = BitPrefix::from_string("11101111");
  CHECK(check_G(holes, translation_host(9), 2) == std::nullopt);
  CHECK(check_G(BitPrefix::from_string("111011111"), translation_host(9), 2) == 3u);
}

TEST_CASE("check_P on closed intervals") {
  BitPrefix a = BitPrefix::from_members(12, std::vector<Door>{0, 10});
  const auto all = range(0, 12);
  CHECK(check_P(a, all, 11, 0).ok);
  CHECK_FALSE(check_P(a, all, 12, 0).ok);
  PCheck tight = check_P(BitPrefix::from_members(4, std::vector<Door>{0, 1}), range(0, 4), 3, 0);
  CHECK_FALSE(tight.ok);
  CHECK(tight.left == 0);
  CHECK(tight.right == 1);
  CHECK(tight.count == 2);
  CHECK(check_P(BitPrefix::from_members(4, std::vector<Door>{0, 1}), range(0, 4), 3, 1).ok);
}

TEST_CASE("received car spacing") {
  BitPrefix a = BitPrefix::from_members(12, std::vector<Door>{0, 4, 10});
  CHECK(received_car_spacing(a, range(0, 12), 3, 0).ok);
  CHECK_FALSE(received_car_spacing(a, range(0, 12), 4, 0).ok);
  CHECK(received_car_spacing(a, {0, 10}, 1, 0).ok == false);
}
