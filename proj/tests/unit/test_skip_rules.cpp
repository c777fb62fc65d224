#include "doctest.h"

#include <random>

#include "stochlab/density.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/skip_rules.hpp"

using namespace stochlab;

namespace {

std::vector<Door> doors(const SkipResult& r) {
  std::vector<Door> out;
  for (const auto& e : r.trace.entries()) out.push_back(e.door);
  return out;
}

BitPrefix bernoulli(std::uint64_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitPrefix a(len);
  for (std::uint64_t i = 0; i < len; ++i) a.set(i, rng() & 1);
  return a;
}

// Fixed script of doors, ignoring contents.
SkipRule scripted(std::vector<Door> script, Door tail) {
  return last_entry_rule("scripted", [script, tail](const std::optional<SkipEntry>& last) {
    if (!last) return script.front();
    for (std::size_t i = 0; i + 1 < script.size(); ++i) {
      if (script[i] == last->door) return script[i + 1];
    }
    return tail;
  });
}

}  // namespace

TEST_CASE("skip sequences are strictly increasing") {
  SkipSequence s;
  s.push({3, false});
  CHECK_THROWS_AS(s.push({3, true}), ContractViolation);
  CHECK_THROWS_AS(s.push({1, true}), ContractViolation);
  s.push({4, true});
  CHECK(s.size() == 2);
}

TEST_CASE("simple rules") {
  SkipResult r = apply_skip_rule(next_door_rule(), BitPrefix::from_string("1010"), 100);
  CHECK(r.selected.str() == "1010");
  SkipResult s = apply_skip_rule(stride_rule(2), BitPrefix::from_string("101010"), 100);
  CHECK(s.selected.str() == "111");
  CHECK(doors(s) == std::vector<Door>{0, 2, 4});
  SkipResult capped = apply_skip_rule(next_door_rule(), BitPrefix(10), 3);
  CHECK(capped.trace.size() == 3);
}

TEST_CASE("disorderly rules are rejected") {
  SkipRule back = last_entry_rule("back", [](const std::optional<SkipEntry>& last) -> Door {
    if (!last) return 2;
    return last->door == 2 ? 5 : 4;
  });
  CHECK_THROWS_AS(apply_skip_rule(back, BitPrefix(10), 10), ContractViolation);
}

TEST_CASE("selected bits are exactly the trace contents") {
  BitPrefix a = bernoulli(300, 5);
  for (const SkipRule& f : {next_door_rule(), stride_rule(3), block_scanner(), even_odd_rule()}) {
    SkipResult r = apply_skip_rule(f, a, 1000);
    REQUIRE(r.selected.size() == r.trace.size());
    Door last = 0;
    for (std::size_t t = 0; t < r.trace.size(); ++t) {
      const SkipEntry& e = r.trace.entries()[t];
      CHECK(e.content == a.at(e.door));
      CHECK(r.selected.at(t) == e.content);
      if (t > 0) CHECK(e.door > last);
      last = e.door;
    }
  }
}

TEST_CASE("next() replays a history through a fresh session") {
  SkipRule f = block_scanner();
  SkipSequence sigma;
  sigma.push({0, false});
  sigma.push({1, true});
  CHECK(f.next(sigma) == 2);
  sigma.push({2, false});
  CHECK(f.next(sigma) == 5);
}

TEST_CASE("ordered blocks") {
  OrderedBlockLayout b0 = ordered_block(0);
  CHECK(b0.start == 0);
  CHECK(b0.end == 1);
  CHECK(b0.sub_block_count == 1);
  OrderedBlockLayout b2 = ordered_block(2);
  CHECK(b2.start == 5);
  CHECK(b2.end == 21);
  CHECK(b2.sub_block_len == 4);
  OrderedBlockLayout b3 = ordered_block(3);
  CHECK(b3.start == 21);
  CHECK(b3.end == 85);
  CHECK(b3.sub_block_begin(1) == 29);
  CHECK(b3.sub_block_end(1) == 37);
  for (std::uint64_t n = 0; n < kMaxOrderedBlock; ++n) {
    CHECK(ordered_block(n).end == ordered_block(n + 1).start);
  }
  CHECK_THROWS_AS(ordered_block(kMaxOrderedBlock + 1), RangeError);

  OrderedPosition p = locate_ordered(30);
  CHECK(p.n == 3);
  CHECK(p.sub_block == 1);
  CHECK(p.offset == 1);
}

TEST_CASE("block scanner hand trace") {
  BitPrefix a(21);
  for (Door d = 9; d < 13; ++d) a.set(d, true);
  SkipResult r = apply_skip_rule(block_scanner(), a, 100);
  CHECK(doors(r) == std::vector<Door>{0, 1, 3, 5, 9, 10, 11, 12});
  CHECK(r.selected.str() == "00001111");
  CHECK(rho(r.selected, 8) == Rational(1, 2));

  SkipResult empty = apply_skip_rule(block_scanner(), BitPrefix(85), 1000);
  CHECK(empty.selected.popcount() == 0);
  // one first bit per sub-block: 1 + 2 + 4 + 8
  CHECK(empty.trace.size() == 15);
}

TEST_CASE("block scanner reaches 1/3 when block 1 holds one sub-block") {
  for (std::uint64_t i = 0; i < 2; ++i) {
    OrderedBlockLayout b = ordered_block(1);
    BitPrefix a(b.end);
    for (Door d = b.sub_block_begin(i); d < b.sub_block_end(i); ++d) a.set(d, true);
    SkipResult r = apply_skip_rule(block_scanner(), a, 100);
    CHECK(rho(r.selected, r.selected.size()) >= Rational(1, 3));
  }
}

TEST_CASE("even-odd rule") {
  BitPrefix ones = BitPrefix::from_string("11111111");
  CHECK(apply_skip_rule(even_odd_rule(), ones, 100).selected.str() == "11111111");
  BitPrefix evens = BitPrefix::from_string("1010101010");
  SkipResult r = apply_skip_rule(even_odd_rule(), evens, 100);
  CHECK(r.selected.str() == "1010101010");
  CHECK(rho(r.selected, r.selected.size()) == Rational(1, 2));
  SkipResult zeros = apply_skip_rule(even_odd_rule(), BitPrefix(8), 100);
  CHECK(doors(zeros) == std::vector<Door>{0, 2, 4, 6});
}

TEST_CASE("halving suppresses 2k+1 right after 2k") {
  SkipRule f = scripted({4, 5, 9}, 100);
  SkipResult r = apply_skip_rule(halve_rule(f), BitPrefix(10), 100);
  CHECK(doors(r) == std::vector<Door>{2, 4});
  CHECK(halve_rule(f).name() == "halved(scripted)");
}

TEST_CASE("halving next-door gives next-door") {
  BitPrefix a = bernoulli(64, 2);
  SkipResult g = apply_skip_rule(halve_rule(next_door_rule()), a, 1000);
  SkipResult h = apply_skip_rule(next_door_rule(), a, 1000);
  CHECK(g.trace == h.trace);
}

TEST_CASE("halving bound on matched prefixes") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BitPrefix a = bernoulli(512, 100 + seed);
    for (const SkipRule& f : {next_door_rule(), stride_rule(2), stride_rule(3), block_scanner(),
                              even_odd_rule()}) {
      HalvingComparison c = compare_halving(f, a, 4096);
      CHECK(c.traces_consistent);
      CHECK(c.pointwise_ok);
      CHECK(c.max_rho_g * Rational(2) >= c.max_rho_f);
      CHECK(c.holds());
    }
  }
}
