#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/experiment.hpp"

namespace {

struct Options {
  std::optional<std::string> config;
  std::map<std::string, std::string> overrides;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "flat key = value config file");
  auto opt = [&](const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.overrides[key] = v; }, help);
  };
  opt("--out", "out", "output directory");
  opt("--seed", "seed", "seed for stochastic strategies");
  opt("--stages", "stages", "number of stages");
  opt("--witness-cap", "witness_cap", "cap on |IF - G| for witness search");
  opt("--budget", "budget", "evaluation budget per contestant");
  opt("--nmin", "nmin", "smallest prefix length counted by density profiles");
  opt("--family", "family", "comma-separated strategies or permutations");
  opt("--permutation", "permutation", "permutation name or file:PATH");
  opt("--rule", "rule", "skip rule");
  opt("--n", "n", "block index for count-big");
  opt("--block-ceiling", "block_ceiling", "largest ordered block searched by build-x");
  opt("--sizing", "sizing", "large or fixed");
  opt("--if-len", "if_len", "IF length for fixed sizing");
  opt("--input", "input", "bitset file (X for alpha-shift)");
  opt("--input-y", "input_y", "bitset file Y for alpha-shift");
  opt("--length", "length", "length of generated prefixes");
  opt("--q", "q", "alpha-shift q");
  opt("--alpha", "alpha", "alpha-shift alpha");
  opt("--k", "k", "alpha-shift k");
  cmd->add_flag_callback(
      "--self-join", [&o] { o.overrides["self_join"] = "true"; }, "run the skip rule on A ⊕ A");
  cmd->add_option("--set", o.sets, "extra key=value overrides");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochlab: desk-scale stochasticity experiments"};
  app.require_subcommand(1);
  Options o;
  std::string kind;
  for (const auto& k : stochlab::experiment_kinds()) {
    auto* cmd = app.add_subcommand(k, "run the " + k + " experiment");
    add_common(cmd, o);
    cmd->callback([&kind, k] { kind = k; });
  }
  auto* run = app.add_subcommand("run", "run the experiment named by the config's kind");
  add_common(run, o);
  run->callback([&kind] { kind = ""; });
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& s : o.sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw stochlab::ParseError("--set expects key=value, got '" + s + "'", 0);
      o.overrides[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (!kind.empty()) o.overrides["kind"] = kind;
    std::optional<std::filesystem::path> path;
    if (o.config) path = *o.config;
    const stochlab::ExperimentConfig cfg = stochlab::load_config(path, o.overrides);
    const stochlab::ExperimentReport report = stochlab::run_experiment(cfg);
    stochlab::write_report(report, cfg.out);
    std::cout << report.format();
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "stochlab: " << e.what() << "\n";
    return 2;
  }
}
