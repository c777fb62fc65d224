#include "stochlab/strategies.hpp"

#include <cctype>
#include <memory>
#include <random>

#include "stochlab/checked.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/io.hpp"

namespace stochlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t.empty()) throw ParseError(what + ": empty number", 0);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
      throw ParseError(what + ": '" + t + "' is not a natural number", i);
    }
    auto next = checked_mul(v, 10);
    if (next) next = checked_add(*next, static_cast<std::uint64_t>(t[i] - '0'));
    if (!next) throw ParseError(what + ": '" + t + "' is out of range", i);
    v = *next;
  }
  return v;
}

void expect_args(const StrategySpec& spec, std::size_t lo, std::size_t hi) {
  if (spec.args.size() < lo || spec.args.size() > hi) {
    throw ContractViolation("strategy '" + spec.str() + "' takes " + std::to_string(lo) +
                            (lo == hi ? "" : ".." + std::to_string(hi)) + " argument(s)");
  }
}

std::uint64_t seed_of(const StrategySpec& spec, std::optional<std::uint64_t> seed) {
  if (!spec.args.empty()) return parse_uint(spec.args[0], spec.name + " seed");
  if (seed) return *seed;
  throw ContractViolation("strategy '" + spec.name + "' is stochastic and needs a seed");
}

[[noreturn]] void unknown(const std::string& kind, const StrategySpec& spec,
                          const std::vector<std::string>& names) {
  std::string list;
  for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
  throw ContractViolation("unknown " + kind + " '" + spec.name + "' (known: " + list + ")");
}

}  // namespace

std::string StrategySpec::str() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + args[i];
  return out + ")";
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')' in '" + text + "'", i);
    }
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (depth != 0) throw ParseError("unbalanced '(' in '" + text + "'", text.size());
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& item : out) {
    if (item.empty()) throw ParseError("empty item in list '" + text + "'", 0);
  }
  return out;
}

StrategySpec parse_strategy(const std::string& raw) {
  const std::string text = trim(raw);
  StrategySpec spec;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    if (text.empty()) throw ParseError("empty strategy name", 0);
    if (text.find(')') != std::string::npos) throw ParseError("stray ')' in '" + text + "'", 0);
    spec.name = text;
    return spec;
  }
  if (text.back() != ')') throw ParseError("trailing text after ')' in '" + text + "'", text.size());
  spec.name = trim(text.substr(0, open));
  if (spec.name.empty()) throw ParseError("missing strategy name in '" + text + "'", 0);
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')' && --depth < 0) {
      throw ParseError("unbalanced ')' in '" + text + "'", open + 1 + i);
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in '" + text + "'", text.size());
  if (!trim(inner).empty()) spec.args = split_list(inner);
  return spec;
}

const std::vector<std::string>& selector_names() {
  static const std::vector<std::string> names = {
      "identity", "linear(k)", "polynomial(p)", "exponential", "random-increasing(seed)"};
  return names;
}

const std::vector<std::string>& contestant_names() {
  static const std::vector<std::string> names = {"oblivious-all", "stop-after-car",
                                                 "jump-after-car(k)", "parity-follower"};
  return names;
}

const std::vector<std::string>& skip_rule_names() {
  static const std::vector<std::string> names = {"next-door", "skip(k)", "block-scanner",
                                                 "even-odd", "halved(rule)"};
  return names;
}

const std::vector<std::string>& permutation_names() {
  static const std::vector<std::string> names = {"identity", "reversal", "swap-pairs",
                                                 "random(seed)", "block-random(seed)",
                                                 "file:PATH"};
  return names;
}

MonotoneSelector make_selector(const std::string& text, std::optional<std::uint64_t> seed) {
  const StrategySpec spec = parse_strategy(text);
  MonotoneSelector f;
  f.name = spec.str();
  if (spec.name == "identity") {
    expect_args(spec, 0, 0);
    f.rule = [](std::uint64_t t) { return t; };
  } else if (spec.name == "linear") {
    expect_args(spec, 1, 1);
    const std::uint64_t k = parse_uint(spec.args[0], "linear");
    if (k == 0) throw ContractViolation("linear(k) needs k >= 1");
    f.rule = [k](std::uint64_t t) { return k * t; };
    f.domain_bound = UINT64_MAX / k;
  } else if (spec.name == "polynomial") {
    expect_args(spec, 1, 1);
    const std::uint64_t p = parse_uint(spec.args[0], "polynomial");
    if (p == 0) throw ContractViolation("polynomial(p) needs p >= 1");
    auto power = [p](std::uint64_t t) -> std::optional<std::uint64_t> {
      std::uint64_t v = 1;
      for (std::uint64_t i = 0; i < p; ++i) {
        auto next = checked_mul(v, t);
        if (!next) return std::nullopt;
        v = *next;
      }
      return v;
    };
    if (p > 1) {
      std::uint64_t lo = 1, bound = 2;
      while (power(bound)) lo = bound, bound *= 2;
      while (lo + 1 < bound) {
        std::uint64_t mid = lo + (bound - lo) / 2;
        (power(mid) ? lo : bound) = mid;
      }
      f.domain_bound = bound;
    }
    f.rule = [power](std::uint64_t t) { return *power(t); };
  } else if (spec.name == "exponential") {
    expect_args(spec, 0, 0);
    f.rule = [](std::uint64_t t) { return (std::uint64_t{1} << t) - 1; };
    f.domain_bound = 63;
  } else if (spec.name == "random-increasing") {
    expect_args(spec, 0, 1);
    const std::uint64_t sd = seed_of(spec, seed);
    f.name = "random-increasing(" + std::to_string(sd) + ")";
    struct Cache {
      std::mt19937_64 rng;
      std::vector<std::uint64_t> values;
    };
    auto cache = std::make_shared<Cache>();
    cache->rng.seed(sd);
    // gaps uniform on {1,2,3,4}
    f.rule = [cache](std::uint64_t t) {
      while (cache->values.size() <= t) {
        std::uint64_t gap = 1 + cache->rng() % 4;
        cache->values.push_back(cache->values.empty() ? gap - 1 : cache->values.back() + gap);
      }
      return cache->values[t];
    };
  } else {
    unknown("selector", spec, selector_names());
  }
  return f;
}

AdaptiveContestant make_contestant(const std::string& text) {
  const StrategySpec spec = parse_strategy(text);
  if (spec.name == "oblivious-all") {
    expect_args(spec, 0, 0);
    return oblivious_all();
  }
  if (spec.name == "stop-after-car") {
    expect_args(spec, 0, 0);
    return stop_after_car();
  }
  if (spec.name == "jump-after-car") {
    expect_args(spec, 1, 1);
    return jump_after_car(parse_uint(spec.args[0], "jump-after-car"));
  }
  if (spec.name == "parity-follower") {
    expect_args(spec, 0, 0);
    return parity_follower();
  }
  unknown("contestant", spec, contestant_names());
}

SkipRule make_skip_rule(const std::string& text) {
  const StrategySpec spec = parse_strategy(text);
  if (spec.name == "next-door") {
    expect_args(spec, 0, 0);
    return next_door_rule();
  }
  if (spec.name == "skip") {
    expect_args(spec, 1, 1);
    return stride_rule(parse_uint(spec.args[0], "skip"));
  }
  if (spec.name == "block-scanner") {
    expect_args(spec, 0, 0);
    return block_scanner();
  }
  if (spec.name == "even-odd") {
    expect_args(spec, 0, 0);
    return even_odd_rule();
  }
  if (spec.name == "halved") {
    expect_args(spec, 1, 1);
    return halve_rule(make_skip_rule(spec.args[0]));
  }
  unknown("skip rule", spec, skip_rule_names());
}

FinitePermutation make_permutation(const std::string& text, std::uint64_t size,
                                   std::optional<std::uint64_t> seed) {
  if (text.rfind("file:", 0) == 0) {
    FinitePermutation p = load_permutation(text.substr(5));
    if (p.size() != size) {
      throw LengthMismatchError("permutation file '" + text.substr(5) + "' has size " +
                                std::to_string(p.size()) + ", need " + std::to_string(size));
    }
    return p;
  }
  const StrategySpec spec = parse_strategy(text);
  if (spec.name == "identity") return FinitePermutation::identity(size);
  if (spec.name == "reversal") return FinitePermutation::reversal(size);
  if (spec.name == "swap-pairs") return FinitePermutation::swap_adjacent_pairs(size);
  if (spec.name == "random") {
    expect_args(spec, 0, 1);
    return FinitePermutation::random(size, seed_of(spec, seed));
  }
  unknown("permutation", spec, permutation_names());
}

PermutationFragment make_fragment(const std::string& text, std::uint64_t ceiling,
                                  std::optional<std::uint64_t> seed) {
  const StrategySpec spec = parse_strategy(text);
  if (spec.name == "identity") return identity_fragment(ceiling);
  if (spec.name == "swap-pairs") return swap_pairs_fragment(ceiling);
  if (spec.name == "reversal" || spec.name == "block-reversal") {
    return block_reversal_fragment(ceiling);
  }
  if (spec.name == "block-random" || spec.name == "random") {
    expect_args(spec, 0, 1);
    return block_random_fragment(ceiling, seed_of(spec, seed));
  }
  unknown("permutation", spec, permutation_names());
}

}  // namespace stochlab
