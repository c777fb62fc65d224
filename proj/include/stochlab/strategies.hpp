#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stochlab/block_counting.hpp"
#include "stochlab/density.hpp"
#include "stochlab/host_adaptive.hpp"
#include "stochlab/permutation.hpp"
#include "stochlab/skip_rules.hpp"

namespace stochlab {

/// A parsed catalog name such as "halved(skip(2))".
struct StrategySpec {
  std::string name;
  std::vector<std::string> args;  // raw argument text, nesting preserved

  std::string str() const;
};

/// Throws ParseError on unbalanced parentheses or trailing text.
StrategySpec parse_strategy(const std::string& text);

/// Splits on top-level commas: "a(1,2), b" -> {"a(1,2)", "b"}.
std::vector<std::string> split_list(const std::string& text);

/// Stochastic strategies take their seed from the argument list or, failing
/// that, `seed`; with neither they throw ContractViolation.
MonotoneSelector make_selector(const std::string& text, std::optional<std::uint64_t> seed = {});
AdaptiveContestant make_contestant(const std::string& text);
SkipRule make_skip_rule(const std::string& text);
/// identity, reversal, swap-pairs, random(seed) on [0, size); "file:PATH"
/// loads a permutation file.
FinitePermutation make_permutation(const std::string& text, std::uint64_t size,
                                   std::optional<std::uint64_t> seed = {});
/// identity, swap-pairs, reversal (block-wise), block-random(seed).
PermutationFragment make_fragment(const std::string& text, std::uint64_t ceiling,
                                  std::optional<std::uint64_t> seed = {});

const std::vector<std::string>& selector_names();
const std::vector<std::string>& contestant_names();
const std::vector<std::string>& skip_rule_names();
const std::vector<std::string>& permutation_names();

}  // namespace stochlab
