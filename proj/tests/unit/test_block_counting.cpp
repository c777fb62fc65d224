#include "doctest.h"

#include <random>

#include "stochlab/block_counting.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/skip_rules.hpp"

using namespace stochlab;

namespace {

// Bigness straight from the statement: some s in [1, 4^n] with
// |pi(X) ∩ [0, s)| * n > s.
bool big_oracle(const FinitePermutation& pi, std::uint64_t n, std::uint64_t i) {
  const std::uint64_t size = std::uint64_t{1} << (2 * n);
  const std::uint64_t len = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s <= size; ++s) {
    std::uint64_t k = 0;
    for (std::uint64_t x = i * len; x < (i + 1) * len; ++x) k += pi(x) < s;
    if (k * n > s) return true;
  }
  return false;
}

std::uint64_t count_oracle(const FinitePermutation& pi, std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) c += big_oracle(pi, n, i);
  return c;
}

}  // namespace

TEST_CASE("is_big on the identity and the reversal") {
  BignessReport first = is_big(FinitePermutation::identity(64), 3, 0);
  CHECK(first.is_big);
  CHECK(first.minimal_s == 1u);
  CHECK(first.k == 1u);
  BignessReport second = is_big(FinitePermutation::identity(64), 3, 1);
  CHECK(second.is_big);
  CHECK(second.minimal_s == 13u);
  CHECK(second.k == 5u);
  BignessReport third = is_big(FinitePermutation::identity(64), 3, 2);
  CHECK_FALSE(third.is_big);
  CHECK_FALSE(third.minimal_s.has_value());

  BignessReport rev = is_big(FinitePermutation::reversal(16), 2, 3);
  CHECK(rev.is_big);
  CHECK(rev.minimal_s == 1u);

  CHECK_THROWS_AS(is_big(FinitePermutation::identity(15), 2, 0), LengthMismatchError);
  CHECK_THROWS_AS(is_big(FinitePermutation::identity(16), 2, 4), OutOfRangeError);
}

TEST_CASE("count_big frozen values") {
  BigCount id3 = count_big(FinitePermutation::identity(64), 3);
  CHECK(id3.count == 2);
  CHECK(id3.bound == Rational(2283, 280));
  BigCount rev2 = count_big(FinitePermutation::reversal(16), 2);
  CHECK(rev2.count == 1);
  CHECK(rev2.bound == Rational(25, 6));
  CHECK(count_big(FinitePermutation::reversal(64), 3).count == 2);
  CHECK(count_big(FinitePermutation::swap_adjacent_pairs(64), 3).count == 2);
  CHECK_THROWS_AS(count_big(FinitePermutation::identity(4096), 6), RangeError);
}

TEST_CASE("count_big agrees with the brute-force oracle") {
  for (std::uint64_t n : {1u, 2u, 3u}) {
    const std::uint64_t size = std::uint64_t{1} << (2 * n);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      FinitePermutation pi = FinitePermutation::random(size, seed);
      BigCount c = count_big(pi, n);
      CHECK(c.count == count_oracle(pi, n));
      CHECK(Rational(static_cast<std::int64_t>(c.count)) <= c.bound);
      for (const auto& r : c.reports) {
        if (r.is_big) CHECK(*r.minimal_s < n * *r.k);
      }
    }
  }
}

TEST_CASE("permutation fragments") {
  PermutationFragment f("f", {2, 0, 5});
  CHECK(f.horizon() == 3);
  CHECK(f(2) == 5);
  CHECK_THROWS_AS(f(3), HorizonError);
  CHECK(f.preimage(0) == 1u);
  CHECK_FALSE(f.preimage(1).has_value());
  CHECK(f.covers_values_below(1));
  CHECK_FALSE(f.covers_values_below(2));
  CHECK_THROWS_AS(PermutationFragment("dup", {1, 1}), InvariantViolation);
}

TEST_CASE("hat permutation") {
  // already closed on the window
  PermutationFragment closed = PermutationFragment::from_permutation(
      "swap", FinitePermutation::swap_adjacent_pairs(32));
  CHECK(hat_permutation(closed, 2).forward() == FinitePermutation::swap_adjacent_pairs(16).forward());

  // i -> i+1 on [0, 4), 4 -> 0: every image has the one outside value below it
  PermutationFragment shift("shift", {1, 2, 3, 4, 0, 5, 6});
  CHECK(hat_permutation(shift, 1).forward() == std::vector<std::uint64_t>{0, 1, 2, 3});

  // 0 -> 6 needs the preimages of 0..5, and 5 is unknown
  PermutationFragment short_horizon("short", {6, 1, 2, 3, 0, 4});
  CHECK_THROWS_AS(hat_permutation(short_horizon, 1), HorizonError);

  PermutationFragment mixed("mixed", {9, 1, 7, 3, 0, 2, 4, 5, 6, 8});
  FinitePermutation hat = hat_permutation(mixed, 1);
  // images 9,1,7,3; values 0,2,4,5,6,8 come from outside the window
  CHECK(hat.forward() == std::vector<std::uint64_t>{3, 0, 2, 1});
}

TEST_CASE("hat permutation never lowers prefix densities") {
  FinitePermutation big = FinitePermutation::random(80, 17);
  PermutationFragment frag = PermutationFragment::from_permutation("random", big);
  FinitePermutation hat = hat_permutation(frag, 2);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::uint64_t> x;
    const std::uint64_t mask = rng() & 0xffff;
    for (std::uint64_t i = 0; i < 16; ++i) {
      if (mask >> i & 1) x.push_back(i);
    }
    CHECK(hat_dominates(frag, hat, x, 2));
  }
  // relative order of the images is kept
  for (std::uint64_t i = 0; i < 16; ++i) {
    for (std::uint64_t j = 0; j < 16; ++j) {
      CHECK((frag(i) < frag(j)) == (hat(i) < hat(j)));
    }
  }
}

TEST_CASE("max_density_beyond") {
  CHECK(max_density_beyond({3, 4}, 0) == Rational(2, 5));
  CHECK(max_density_beyond({0}, 0) == Rational(1));
  CHECK(max_density_beyond({0}, 1) == Rational(1, 2));
  CHECK(max_density_beyond({}, 0) == Rational(0));
}

TEST_CASE("greedy X against block-preserving permutations") {
  const std::vector<PermutationFragment> perms = {identity_fragment(6), swap_pairs_fragment(6),
                                                  block_reversal_fragment(6)};
  GreedyState st = build_x_greedy(perms, 3, 6);
  REQUIRE_FALSE(st.failed_stage.has_value());
  REQUIRE(st.stages.size() == 3);
  CHECK(st.stages[0].begin == 3);
  CHECK(st.stages[0].end == 5);
  CHECK(st.stages[0].sigma == 5);
  CHECK(st.stages[1].begin == 21);
  CHECK(st.stages[1].end == 29);
  CHECK(st.stages[1].sigma == 85);
  CHECK(st.stages[2].begin == 341);
  CHECK(st.stages[2].end == 373);
  CHECK(st.stages[2].sigma == 1365);
  CHECK(st.prefix.size() == 1365);
  CHECK(st.prefix.popcount() == 2 + 8 + 32);
  for (std::size_t k = 1; k < st.stages.size(); ++k) {
    CHECK(st.stages[k].sigma > st.stages[k - 1].sigma);
    CHECK(st.stages[k].block > st.stages[k - 1].block);
  }
  for (const auto& c : verify_greedy(st, perms)) CHECK(c.ok);
  for (const auto& s : st.stages) CHECK(scanner_exit_density(st.prefix, s.block) >= Rational(1, 3));
}

TEST_CASE("greedy reports an exhausted horizon") {
  GreedyState st = build_x_greedy({identity_fragment(3)}, 5, 3);
  REQUIRE(st.failed_stage.has_value());
  CHECK(*st.failed_stage == 2);
  CHECK_FALSE(st.diagnostic.empty());
  CHECK(st.stages.size() == 2);
}

TEST_CASE("scanner exit density with one sub-block per block") {
  for (std::uint64_t n = 1; n <= 3; ++n) {
    OrderedBlockLayout b = ordered_block(n);
    for (std::uint64_t i = 0; i < b.sub_block_count; ++i) {
      BitPrefix a(b.end);
      for (Door d = b.sub_block_begin(i); d < b.sub_block_end(i); ++d) a.set(d, true);
      CHECK(scanner_exit_density(a, n) >= Rational(1, 3));
    }
  }
}

TEST_CASE("block fragments preserve ordered blocks") {
  for (const auto& f : {swap_pairs_fragment(4), block_reversal_fragment(4), block_random_fragment(4, 8)}) {
    for (std::uint64_t j = 0; j < f.horizon(); ++j) {
      CHECK(locate_ordered(f(j)).n == locate_ordered(j).n);
    }
    CHECK(f.covers_values_below(f.horizon()));
  }
}
