#include "doctest.h"

#include "stochlab/density.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/permutation.hpp"
#include "stochlab/rational.hpp"

using namespace stochlab;

namespace {

// Brute-force density straight from the definition, kept apart from rho().
Rational count_density(const std::string& bits, std::uint64_t n) {
  std::int64_t ones = 0;
  for (std::uint64_t i = 0; i < n; ++i) ones += bits[i] == '1';
  return Rational(ones, static_cast<std::int64_t>(n));
}

}  // namespace

TEST_CASE("rational arithmetic stays exact and reduced") {
  Rational a(2, 4);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) * Rational(3, 4) == Rational(1, 4));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(1).str() == "1/1");
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(1), RangeError);
}

TEST_CASE("decimal rendering rounds half to even") {
  CHECK(Rational(1, 3).decimal(6) == "0.333333");
  CHECK(Rational(2, 3).decimal(6) == "0.666667");
  CHECK(Rational(1, 2).decimal(0) == "0");
  CHECK(Rational(3, 2).decimal(0) == "2");
  CHECK(Rational(1, 8).decimal(2) == "0.12");
  CHECK(Rational(3, 8).decimal(2) == "0.38");
  CHECK(Rational(1).decimal(6) == "1.000000");
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_number(1) == Rational(1));
  CHECK(harmonic_number(4) == Rational(25, 12));
  CHECK(harmonic_number(8) == Rational(761, 280));
}

TEST_CASE("bit prefix refuses queries past its length") {
  BitPrefix a = BitPrefix::from_string("1010");
  CHECK(a.size() == 4);
  CHECK(a.at(0));
  CHECK_FALSE(a.at(1));
  CHECK_THROWS_AS(a.at(4), OutOfRangeError);
  CHECK(a.count_below(3) == 2);
  CHECK_THROWS_AS(a.count_below(5), OutOfRangeError);
  CHECK_THROWS_AS(BitPrefix::from_string("10x1"), ParseError);
  try {
    BitPrefix::from_string("10x1");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("rho examples") {
  CHECK(rho(BitPrefix::from_string("1010"), 4) == Rational(1, 2));
  CHECK(rho(BitPrefix::from_string("111"), 3) == Rational(1));
  CHECK(rho(BitPrefix::from_string("00001"), 5) == Rational(1, 5));
  CHECK_THROWS_AS(rho(BitPrefix::from_string("1"), 0), OutOfRangeError);
  CHECK_THROWS_AS(rho(BitPrefix::from_string("1"), 2), OutOfRangeError);
}

TEST_CASE("rho agrees with a direct count on every prefix") {
  const std::string bits = "0110100110010110100101100110100110010110";
  BitPrefix a = BitPrefix::from_string(bits);
  for (std::uint64_t n = 1; n <= bits.size(); ++n) {
    Rational r = rho(a, n);
    CHECK(r == count_density(bits, n));
    CHECK(r >= Rational(0));
    CHECK(r <= Rational(1));
  }
}

TEST_CASE("density profiles") {
  DensityProfile ones = density_profile(BitPrefix::from_string("1111"), 1);
  CHECK(ones.max_rho == Rational(1));
  CHECK(ones.min_rho_tail == Rational(1));
  CHECK(ones.samples.size() == 4);

  // rho_2 = 1/2, rho_3 = 1/3, rho_4 = 1/2
  DensityProfile alt = density_profile(BitPrefix::from_string("0101"), 2);
  CHECK(alt.max_rho == Rational(1, 2));
  CHECK(alt.min_rho_tail == Rational(1, 3));

  DensityProfile lead = density_profile(BitPrefix::from_string("1000"), 1);
  CHECK(lead.max_rho == Rational(1));
  CHECK(lead.samples[0].n == 1);

  CHECK_THROWS_AS(density_profile(BitPrefix::from_string("10"), 8), OutOfRangeError);
}

TEST_CASE("select_monotone") {
  MonotoneSelector id{"identity", [](std::uint64_t t) { return t; }};
  CHECK(select_monotone(id, BitPrefix::from_string("1010")).str() == "1010");

  MonotoneSelector twice{"2t", [](std::uint64_t t) { return 2 * t; }};
  CHECK(select_monotone(twice, BitPrefix::from_string("101010")).str() == "111");

  MonotoneSelector square{"t^2", [](std::uint64_t t) { return t * t; }};
  BitPrefix set014 = BitPrefix::from_members(10, std::vector<Door>{0, 1, 4});
  // t = 0,1,2,3 land on 0,1,4,9
  CHECK(select_monotone(square, set014).str() == "1110");

  MonotoneSelector bad{"bad", [](std::uint64_t t) { return t == 3 ? std::uint64_t{1} : t; }};
  try {
    select_monotone(bad, BitPrefix(8));
    FAIL("expected a contract violation");
  } catch (const ContractViolation& e) {
    CHECK(e.step() == 3);
  }
}

TEST_CASE("permute_image") {
  CHECK(permute_image(FinitePermutation::identity(4), BitPrefix::from_string("0110")).str() == "0110");
  CHECK(permute_image(FinitePermutation::reversal(4), BitPrefix::from_string("1000")).str() == "0001");
  CHECK(permute_image(FinitePermutation::swap_adjacent_pairs(6), BitPrefix::from_string("101010")).str() ==
        "010101");
  CHECK_THROWS_AS(permute_image(FinitePermutation::identity(3), BitPrefix(4)), LengthMismatchError);

  FinitePermutation p = FinitePermutation::random(64, 9);
  BitPrefix a(64);
  for (Door d : {1, 5, 9, 33, 60}) a.set(d, true);
  CHECK(permute_image(p, a).popcount() == a.popcount());
}

TEST_CASE("permutations validate bijectivity") {
  CHECK_THROWS_AS(FinitePermutation(std::vector<std::uint64_t>{0, 3, 1}), OutOfRangeError);
  CHECK_THROWS_AS(FinitePermutation(std::vector<std::uint64_t>{0, 1, 1}), InvariantViolation);
  FinitePermutation p = FinitePermutation::random(50, 4);
  for (std::uint64_t j = 0; j < 50; ++j) CHECK(p(p.inverse(j)) == j);
  CHECK(FinitePermutation::random(50, 4) == p);
}

TEST_CASE("join") {
  CHECK(join(BitPrefix::from_string("1"), BitPrefix::from_string("0")).str() == "10");
  CHECK(join(BitPrefix::from_string("10"), BitPrefix::from_string("10")).str() == "1100");
  CHECK(join(BitPrefix::from_string("011"), BitPrefix::from_string("101")).str() == "011011");
  CHECK_THROWS_AS(join(BitPrefix(2), BitPrefix(3)), LengthMismatchError);

  BitPrefix a = BitPrefix::from_string("1101001");
  MonotoneSelector evens{"2t", [](std::uint64_t t) { return 2 * t; }};
  CHECK(select_monotone(evens, join(a, a)) == a);
}

TEST_CASE("alpha shift check") {
  BitPrefix x = BitPrefix::from_string("11000000");
  BitPrefix y = BitPrefix::from_string("00001111");
  auto ws = alpha_shift_check(x, y, FinitePermutation::identity(8), Rational(1, 4), Rational(1, 2), 1);
  REQUIRE_FALSE(ws.empty());
  CHECK(ws[0].m == 2);
  CHECK(ws[0].x_density == Rational(1));
  CHECK(ws[0].union_density == Rational(1));
  for (const auto& w : ws) CHECK(w.union_density == w.x_density + w.remainder_density);

  auto none = alpha_shift_check(BitPrefix(8), y, FinitePermutation::reversal(8), Rational(1, 8),
                                Rational(1, 2), 0);
  CHECK(none.empty());
  CHECK_THROWS_AS(alpha_shift_check(BitPrefix(8), BitPrefix(7), FinitePermutation::identity(8),
                                    Rational(1, 4), Rational(1, 2), 0),
                  LengthMismatchError);
}
