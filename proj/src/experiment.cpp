#include "stochlab/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>
#include <set>

#include "stochlab/block_counting.hpp"
#include "stochlab/checked.hpp"
#include "stochlab/density.hpp"
#include "stochlab/disordered_block.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/host_adaptive.hpp"
#include "stochlab/host_nonadaptive.hpp"
#include "stochlab/io.hpp"
#include "stochlab/skip_rules.hpp"
#include "stochlab/strategies.hpp"

namespace stochlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string where(const ConfigValue& v) {
  return v.line == 0 ? "command line" : "config line " + std::to_string(v.line);
}

[[noreturn]] void bad(const std::string& key, const ConfigValue& v, const std::string& why) {
  throw ParseError(where(v) + ": " + key + " = '" + v.value + "': " + why, v.line);
}

std::uint64_t to_uint(const std::string& key, const ConfigValue& v) {
  const std::string t = trim(v.value);
  if (t.empty()) bad(key, v, "expected a natural number");
  std::uint64_t out = 0;
  for (char c : t) {
    if (c < '0' || c > '9') bad(key, v, "expected a natural number");
    auto next = checked_mul(out, 10);
    if (next) next = checked_add(*next, static_cast<std::uint64_t>(c - '0'));
    if (!next) bad(key, v, "number out of range");
    out = *next;
  }
  return out;
}

std::uint64_t to_positive(const std::string& key, const ConfigValue& v) {
  const std::uint64_t x = to_uint(key, v);
  if (x == 0) bad(key, v, "must be positive");
  return x;
}

Rational to_rational(const std::string& key, const ConfigValue& v) {
  const std::string t = trim(v.value);
  const auto slash = t.find('/');
  ConfigValue num{t.substr(0, slash), v.line};
  ConfigValue den{slash == std::string::npos ? "1" : t.substr(slash + 1), v.line};
  const std::uint64_t p = to_uint(key, num);
  const std::uint64_t q = to_positive(key, den);
  if (p > static_cast<std::uint64_t>(INT64_MAX) || q > static_cast<std::uint64_t>(INT64_MAX)) {
    bad(key, v, "out of range");
  }
  return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const NestingError*>(&e)) return "nesting";
  if (dynamic_cast<const ContractViolation*>(&e)) return "contract-violation";
  if (dynamic_cast<const InvariantViolation*>(&e)) return "invariant-violation";
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "budget-exceeded";
  if (dynamic_cast<const InfeasibleError*>(&e)) return "infeasible";
  if (dynamic_cast<const HorizonError*>(&e)) return "horizon";
  if (dynamic_cast<const OutOfRangeError*>(&e)) return "out-of-range";
  if (dynamic_cast<const LengthMismatchError*>(&e)) return "length-mismatch";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  return "error";
}

class Reporter {
 public:
  explicit Reporter(ExperimentReport& r) : r_(r) {}
  bool check(const std::string& name, bool pass, const std::string& detail) {
    r_.checks.push_back({name, pass, detail});
    return pass;
  }
  bool audit(const std::string& name, const AuditResult& a, const std::string& ok_detail) {
    return check(name, a.ok, a.ok ? ok_detail : a.detail);
  }
  void log(const std::string& line) { r_.log.push_back(line); }
  void file(const std::string& name, std::string body) { r_.files[name] = std::move(body); }

 private:
  ExperimentReport& r_;
};

bool ledger_disjoint(const RestrictionLedger& l) {
  return std::none_of(l.cars().begin(), l.cars().end(), [&](Door d) { return l.is_goat(d); });
}

std::string ledger_summary(const RestrictionLedger& l) {
  return "cars=" + std::to_string(l.cars().size()) + " goats=" + std::to_string(l.goats().size());
}

HostPermutation make_host(const ExperimentConfig& c) {
  if (c.sizing == "fixed") return construct_h_fixed(c.stages, c.if_len, c.max_doors);
  return construct_h(c.stages, c.max_doors);
}

std::string host_label(const ExperimentConfig& c) {
  return c.sizing == "fixed" ? "fixed(" + std::to_string(c.if_len) + ")" : "large";
}

/// The host for all requested stages or, when that is out of range, the
/// longest prefix of it that can be built (reported as a failed check).
HostPermutation host_for_game(const ExperimentConfig& c, Reporter& rep) {
  for (std::uint64_t s = c.stages; s >= 1; --s) {
    ExperimentConfig sub = c;
    sub.stages = s;
    try {
      HostPermutation h = make_host(sub);
      rep.check("construct", s == c.stages,
                "sizing=" + host_label(c) + " stages=" + std::to_string(s) +
                    " total_len=" + std::to_string(h.total_len) +
                    (s == c.stages ? "" : " (" + std::to_string(c.stages) + " requested)"));
      return h;
    } catch (const RangeError& e) {
      rep.log(std::string("host with ") + std::to_string(s) + " stages: " + e.what());
    }
  }
  rep.check("construct", false, "no stage of the host fits");
  return {};
}

void add_prefix_artifacts(Reporter& rep, const std::string& stem, const BitPrefix& a) {
  rep.file(stem + ".bits", format_bitset(a));
  if (!a.empty()) rep.file(stem + "_trace.csv", format_trace(density_profile(a, 1).samples));
}

void run_construct_h(const ExperimentConfig& c, Reporter& rep) {
  HostPermutation h;
  try {
    h = make_host(c);
  } catch (const RangeError& e) {
    rep.check("construct", false, std::string("range: ") + e.what());
    return;
  }
  rep.check("construct", true,
            "sizing=" + host_label(c) + " stages=" + std::to_string(c.stages) +
                " total_len=" + std::to_string(h.total_len));
  rep.audit("bijection", audit_bijection(h), "doors=" + std::to_string(h.total_len));
  rep.audit("concatenation", audit_concatenation(h), "blocks=" + std::to_string(h.blocks.size()));
  for (std::size_t s = 1; s < h.blocks.size(); ++s) {
    const DisorderedBlock& b = h.blocks[s];
    const std::string tag = "[s=" + std::to_string(s) + "]";
    const std::string span = "doors=[" + std::to_string(b.door_begin()) + "," +
                             std::to_string(b.door_end()) + ")";
    rep.audit("gap-filling" + tag, audit_gap_filling(b), span);
    rep.audit("levels" + tag, audit_levels(b), "level=" + std::to_string(b.level()));
    const bool large = largeness_ok(b, s);
    rep.check("largeness" + tag, large,
              large ? "if_len=" + std::to_string(b.if_len()) + " time=" + std::to_string(b.time_begin())
                    : "if_len=" + std::to_string(b.if_len()) + " below (t+s^3)*s somewhere in the block");
  }
  std::vector<std::uint64_t> fwd(h.total_len);
  for (Time t = 0; t < h.total_len; ++t) fwd[t] = h_eval(h, t);
  rep.file("h.perm", format_permutation(FinitePermutation(std::move(fwd))));
}

void run_nonadaptive(const ExperimentConfig& c, Reporter& rep) {
  std::vector<MonotoneSelector> family;
  for (const auto& name : c.family) family.push_back(make_selector(name, c.seed));
  HostPermutation h = host_for_game(c, rep);
  if (h.stages() == 0) return;
  const std::uint64_t budget = c.budget ? c.budget : kDefaultBudget;
  HostAssignment run = build_host_assignment(family, h, budget);
  for (const auto& line : run.log) rep.log(line);
  for (auto i : run.dropped) rep.log("dropped " + family[i].name);

  rep.check("ledger-disjoint", ledger_disjoint(run.ledger), ledger_summary(run.ledger));

  for (const StageReport& st : run.stages) {
    const std::string s = std::to_string(st.stage);
    auto g = check_G(run.a, h, st.stage);
    rep.check("G[s=" + s + "]", g.has_value(), g ? "n=" + std::to_string(*g) : "no witness in prefix");
    const Door from = h.blocks[st.stage].first_door();
    for (auto idx : st.members) {
      const auto doors = doors_in_range(family[idx], from, run.a.size(), budget);
      PCheck p = check_P(run.a, doors, st.stage, from);
      rep.check("P[s=" + s + ",f=" + family[idx].name + "]", p.ok,
                p.ok ? "pairs=" + std::to_string(p.pairs) + " from=" + std::to_string(from)
                     : "cars " + std::to_string(p.left) + "," + std::to_string(p.right) + " see " +
                           std::to_string(p.count) + " < " + s);
      PCheck rc = received_car_spacing(run.a, doors, st.stage, from);
      rep.log("stage " + s + " " + family[idx].name + " received-car spacing " +
              (rc.ok ? "holds over " + std::to_string(rc.pairs) + " pairs"
                     : "fails between " + std::to_string(rc.left) + " and " + std::to_string(rc.right)));
    }
  }
  for (std::uint64_t s = h.stages() + 1; s <= c.stages; ++s) {
    rep.check("G[s=" + std::to_string(s) + "]", false, "host block DB_" + std::to_string(s) + " is out of range");
  }
  add_prefix_artifacts(rep, "A", run.a);
}

void run_adaptive(const ExperimentConfig& c, Reporter& rep) {
  std::vector<AdaptiveContestant> family;
  for (const auto& name : c.family) {
    family.push_back(make_contestant(name));
    if (c.budget) family.back().budget = c.budget;
  }
  HostPermutation h = host_for_game(c, rep);
  if (h.stages() == 0) return;
  AdaptiveAssignment run = build_adaptive_assignment(family, h, c.stages, c.witness_cap);
  for (const auto& line : run.log) rep.log(line);
  rep.check("complete", !run.failure.has_value(),
            run.failure ? *run.failure : "stages=" + std::to_string(run.stages.size()));

  rep.check("ledger-disjoint", ledger_disjoint(run.ledger), ledger_summary(run.ledger));

  const std::set<std::size_t> dropped(run.dropped.begin(), run.dropped.end());
  for (const AdaptiveStageReport& st : run.stages) {
    const std::string tag = "s=" + std::to_string(st.stage) + ",n=" + std::to_string(st.block_index);
    auto g = check_G(run.a, h, st.block_index);
    rep.check("G[" + tag + "]", g.has_value(), g ? "n=" + std::to_string(*g) : "no witness in prefix");
    for (auto idx : st.members) {
      if (dropped.count(idx)) continue;
      AdaptivePCheck p =
          check_adaptive_P(run.a, family[idx], st.block_index, h.blocks[st.block_index], &run.ledger);
      rep.check("adaptive-P[" + tag + ",g=" + family[idx].name + "]", p.ok,
                p.ok ? "cars=" + std::to_string(p.cars_in_block) : p.reason);
    }
  }
  add_prefix_artifacts(rep, "A", run.a);
}

BitPrefix bernoulli_prefix(std::uint64_t len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitPrefix a(len);
  for (std::uint64_t i = 0; i < len; ++i) a.set(i, (rng() >> 63) != 0);
  return a;
}

BitPrefix input_prefix(const ExperimentConfig& c, const std::string& path, std::uint64_t salt) {
  if (!path.empty()) return load_bitset(path);
  if (!c.seed) throw ContractViolation("a generated input prefix needs a seed");
  return bernoulli_prefix(c.length, *c.seed + salt);
}

void run_trace(const ExperimentConfig& c, Reporter& rep) {
  const SkipRule f = make_skip_rule(c.rule);
  const BitPrefix base = input_prefix(c, c.input, 0);
  const BitPrefix a = c.self_join ? join(base, base) : base;
  SkipResult r = apply_skip_rule(f, a, a.size() + 1);
  rep.check("orderly", true,
            "rule=" + f.name() + " steps=" + std::to_string(r.trace.size()));
  if (r.selected.size() < c.nmin) {
    rep.check("profile", false,
              "selected " + std::to_string(r.selected.size()) + " < nmin " + std::to_string(c.nmin));
  } else {
    DensityProfile p = density_profile(r.selected, c.nmin);
    rep.check("profile", true,
              "selected=" + std::to_string(r.selected.size()) + " final=" +
                  rho(r.selected, r.selected.size()).str() + " max_rho=" + p.max_rho.str() +
                  " min_rho_tail=" + p.min_rho_tail.str());
    rep.file("trace.csv", format_trace(p.samples));
  }
  const StrategySpec spec = parse_strategy(c.rule);
  if (spec.name == "halved") {
    const SkipRule inner = make_skip_rule(spec.args[0]);
    HalvingComparison cmp = compare_halving(inner, a, 2 * a.size() + 1);
    rep.check("halving", cmp.holds(),
              cmp.holds() ? "max_rho_g=" + cmp.max_rho_g.str() + " max_rho_f=" + cmp.max_rho_f.str()
                          : !cmp.traces_consistent
                                ? std::string("halved trace does not match the inner trace")
                                : "pointwise bound fails at m=" +
                                      std::to_string(cmp.first_violation.value_or(0)));
  }
  rep.file("selected.bits", format_bitset(r.selected));
}

void run_count_big(const ExperimentConfig& c, Reporter& rep) {
  if (c.n == 0) throw OutOfRangeError("count-big needs n >= 1");
  if (c.n > kMaxCountN) throw RangeError("count-big supports n <= " + std::to_string(kMaxCountN));
  const std::uint64_t size = std::uint64_t{1} << (2 * c.n);
  FinitePermutation pi = make_permutation(c.permutation, size, c.seed);
  BigCount bc = count_big(pi, c.n);
  rep.check("bigness-bound[n=" + std::to_string(c.n) + "]", true,
            "count=" + std::to_string(bc.count) + " bound=" + bc.bound.str());
  std::string csv = "sub_block,big,minimal_s,k\n";
  for (const auto& r : bc.reports) {
    csv += std::to_string(r.sub_block) + "," + (r.is_big ? "1" : "0") + "," +
           (r.minimal_s ? std::to_string(*r.minimal_s) : "") + "," +
           (r.k ? std::to_string(*r.k) : "") + "\n";
  }
  rep.file("big.csv", csv);
}

void run_build_x(const ExperimentConfig& c, Reporter& rep) {
  std::vector<PermutationFragment> perms;
  for (const auto& name : c.family) perms.push_back(make_fragment(name, c.block_ceiling, c.seed));
  GreedyState st = build_x_greedy(perms, c.stages, c.block_ceiling);
  rep.check("greedy", !st.failed_stage.has_value(),
            st.failed_stage ? "stage " + std::to_string(*st.failed_stage) + ": " + st.diagnostic
                            : "stages=" + std::to_string(st.stages.size()) +
                                  " len=" + std::to_string(st.prefix.size()));
  for (const auto& s : st.stages) {
    rep.log("stage " + std::to_string(s.stage) + " block=" + std::to_string(s.block) +
            " sub_block=" + std::to_string(s.sub_block) + " doors=[" + std::to_string(s.begin) +
            "," + std::to_string(s.end) + ") sigma=" + std::to_string(s.sigma) +
            " threshold=" + s.threshold.str());
  }
  for (const auto& g : verify_greedy(st, perms)) {
    rep.check("density[s=" + std::to_string(g.stage) + ",pi=" + perms[g.perm].name() + "]", g.ok,
              "max=" + g.max_density.str() + " threshold=" + g.threshold.str());
  }
  const Rational third(1, 3);
  for (const auto& s : st.stages) {
    Rational d = scanner_exit_density(st.prefix, s.block);
    rep.check("scanner[s=" + std::to_string(s.stage) + ",block=" + std::to_string(s.block) + "]",
              d >= third, "density=" + d.str());
  }
  rep.file("X.bits", format_bitset(st.prefix));
}

void run_alpha_shift(const ExperimentConfig& c, Reporter& rep) {
  const BitPrefix x = input_prefix(c, c.input, 0);
  const BitPrefix y = input_prefix(c, c.input_y, 1);
  FinitePermutation pi = make_permutation(c.permutation, x.size(), c.seed);
  std::vector<AlphaWitness> ws = alpha_shift_check(x, y, pi, c.q, c.alpha, c.k);
  rep.check("additivity", true, "m=(" + std::to_string(c.k) + "," + std::to_string(x.size()) + "]");
  std::string csv = "m,x_density,remainder_density,union_density,premise\n";
  std::uint64_t premised = 0;
  for (const auto& w : ws) {
    csv += std::to_string(w.m) + "," + w.x_density.str() + "," + w.remainder_density.str() + "," +
           w.union_density.str() + "," + (w.premise_holds ? "1" : "0") + "\n";
    if (!w.premise_holds) continue;
    ++premised;
    const Rational bound = c.alpha + c.q / Rational(2);
    rep.check("alpha[m=" + std::to_string(w.m) + "]", w.union_density > bound,
              "union=" + w.union_density.str() + " bound=" + bound.str());
  }
  rep.log("witnesses=" + std::to_string(ws.size()) + " with premise=" + std::to_string(premised));
  rep.file("witnesses.csv", csv);
}

}  // namespace

std::map<std::string, ConfigValue> parse_config(const std::string& text) {
  std::map<std::string, ConfigValue> out;
  std::uint64_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    start = nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(lineno) + ": empty key", lineno);
    }
    if (out.count(key)) {
      throw ParseError("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                           "' (first on line " + std::to_string(out[key].line) + ")",
                       lineno);
    }
    out[key] = {trim(line.substr(eq + 1)), lineno};
  }
  return out;
}

ExperimentConfig make_config(const std::map<std::string, ConfigValue>& values) {
  ExperimentConfig c;
  bool family_set = false;
  for (const auto& [key, v] : values) {
    if (key == "kind") {
      const auto& kinds = experiment_kinds();
      if (std::find(kinds.begin(), kinds.end(), v.value) == kinds.end()) bad(key, v, "unknown experiment kind");
      c.kind = v.value;
    } else if (key == "stages" || key == "max_stages") {
      c.stages = to_positive(key, v);
    } else if (key == "family" || key == "contestants" || key == "permutations") {
      try {
        c.family = split_list(v.value);
      } catch (const ParseError& e) {
        bad(key, v, e.what());
      }
      family_set = true;
    } else if (key == "permutation") {
      c.permutation = v.value;
    } else if (key == "rule") {
      c.rule = v.value;
    } else if (key == "seed") {
      c.seed = to_uint(key, v);
    } else if (key == "budget") {
      c.budget = to_positive(key, v);
    } else if (key == "witness_cap") {
      c.witness_cap = to_positive(key, v);
    } else if (key == "nmin") {
      c.nmin = to_positive(key, v);
    } else if (key == "block_ceiling") {
      c.block_ceiling = to_positive(key, v);
    } else if (key == "n") {
      c.n = to_positive(key, v);
    } else if (key == "sizing") {
      if (v.value != "large" && v.value != "fixed") bad(key, v, "expected large or fixed");
      c.sizing = v.value;
    } else if (key == "if_len") {
      c.if_len = to_positive(key, v);
    } else if (key == "max_doors") {
      c.max_doors = to_positive(key, v);
    } else if (key == "length") {
      c.length = to_positive(key, v);
    } else if (key == "input" || key == "x") {
      c.input = v.value;
    } else if (key == "input_y" || key == "y") {
      c.input_y = v.value;
    } else if (key == "self_join") {
      if (v.value != "true" && v.value != "false") bad(key, v, "expected true or false");
      c.self_join = v.value == "true";
    } else if (key == "q") {
      c.q = to_rational(key, v);
    } else if (key == "alpha") {
      c.alpha = to_rational(key, v);
    } else if (key == "k") {
      c.k = to_uint(key, v);
    } else if (key == "out") {
      c.out = v.value;
    } else {
      bad(key, v, "unknown key");
    }
  }
  if (c.kind.empty()) throw ParseError("no experiment kind given", 0);
  if (!family_set) {
    if (c.kind == "nonadaptive-game") c.family = {"identity"};
    if (c.kind == "adaptive-game") c.family = {"oblivious-all"};
    if (c.kind == "build-x") c.family = {"identity", "swap-pairs", "reversal"};
  }
  // validate strategy names up front so a typo fails before any work
  auto check_names = [&](const std::string& key, const std::function<void(const std::string&)>& make) {
    auto it = values.find(key);
    ConfigValue v = it != values.end() ? it->second : ConfigValue{};
    try {
      make("");
    } catch (const Error& e) {
      bad(key, v, e.what());
    }
  };
  if (c.kind == "nonadaptive-game") {
    check_names("family", [&](const std::string&) {
      for (const auto& f : c.family) make_selector(f, c.seed);
    });
  } else if (c.kind == "adaptive-game") {
    check_names("family", [&](const std::string&) {
      for (const auto& f : c.family) make_contestant(f);
    });
  } else if (c.kind == "weak-stochastic-trace") {
    check_names("rule", [&](const std::string&) { make_skip_rule(c.rule); });
    if (c.input.empty() && !c.seed) {
      throw ParseError("weak-stochastic-trace needs input or a seed for the generated prefix", 0);
    }
  } else if (c.kind == "build-x") {
    check_names("family", [&](const std::string&) {
      for (const auto& f : c.family) {
        const StrategySpec s = parse_strategy(f);
        if (s.name != "identity" && s.name != "swap-pairs" && s.name != "reversal" &&
            s.name != "block-reversal" && s.name != "block-random" && s.name != "random") {
          throw ContractViolation("unknown permutation '" + f + "'");
        }
        if ((s.name == "block-random" || s.name == "random") && s.args.empty() && !c.seed) {
          throw ContractViolation("permutation '" + f + "' is stochastic and needs a seed");
        }
      }
    });
  } else if (c.kind == "count-big" || c.kind == "alpha-shift") {
    check_names("permutation", [&](const std::string&) {
      if (c.permutation.rfind("file:", 0) == 0) return;
      const StrategySpec s = parse_strategy(c.permutation);
      if (s.name != "identity" && s.name != "reversal" && s.name != "swap-pairs" && s.name != "random") {
        throw ContractViolation("unknown permutation '" + c.permutation + "'");
      }
      if (s.name == "random" && s.args.empty() && !c.seed) {
        throw ContractViolation("permutation 'random' is stochastic and needs a seed");
      }
    });
    if (c.kind == "alpha-shift" && (c.input.empty() || c.input_y.empty()) && !c.seed) {
      throw ParseError("alpha-shift needs x and y inputs or a seed to generate them", 0);
    }
  }
  return c;
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::map<std::string, std::string>& overrides) {
  std::map<std::string, ConfigValue> values;
  if (path) values = parse_config(read_file(*path));
  for (const auto& [k, v] : overrides) values[k] = {v, 0};
  return make_config(values);
}

bool ExperimentReport::ok() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string ExperimentReport::format() const {
  std::string out;
  for (const auto& c : checks) {
    out += "CHECK " + c.name + " " + (c.pass ? "PASS" : "FAIL");
    if (!c.detail.empty()) out += " " + c.detail;
    out += "\n";
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  report.kind = config.kind;
  Reporter rep(report);
  static const std::map<std::string, std::function<void(const ExperimentConfig&, Reporter&)>>
      runners = {{"construct-h", run_construct_h},     {"nonadaptive-game", run_nonadaptive},
                 {"adaptive-game", run_adaptive},      {"weak-stochastic-trace", run_trace},
                 {"count-big", run_count_big},         {"build-x", run_build_x},
                 {"alpha-shift", run_alpha_shift}};
  auto it = runners.find(config.kind);
  try {
    if (it == runners.end()) throw ContractViolation("unknown experiment kind '" + config.kind + "'");
    it->second(config, rep);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (auto& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    rep.check("run", false, error_kind(e) + ": " + msg);
  }
  return report;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, body] : report.files) write_file(dir / name, body);
  write_file(dir / "report.txt", report.format());
  std::string log;
  for (const auto& line : report.log) log += line + "\n";
  write_file(dir / "log.txt", log);
}

}  // namespace stochlab
