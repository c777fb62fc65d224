#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stochlab/rational.hpp"

namespace stochlab {

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {
      "construct-h", "nonadaptive-game", "adaptive-game", "weak-stochastic-trace",
      "count-big",   "build-x",          "alpha-shift"};
  return kinds;
}

struct ConfigValue {
  std::string value;
  std::uint64_t line = 0;  // 0 for command-line overrides
};

/// Flat key = value text; '#' starts a comment. ParseError names the line.
std::map<std::string, ConfigValue> parse_config(const std::string& text);

struct ExperimentConfig {
  std::string kind;
  std::uint64_t stages = 1;
  /// Selectors, contestants or permutation fragments, depending on kind.
  std::vector<std::string> family;
  std::string permutation = "identity";
  std::string rule = "next-door";
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 0;       // 0 -> module default
  std::uint64_t witness_cap = 16;
  std::uint64_t nmin = 8;
  std::uint64_t block_ceiling = 6;
  std::uint64_t n = 3;
  std::string sizing = "large";
  std::uint64_t if_len = 4;
  std::uint64_t max_doors = std::uint64_t{1} << 24;
  std::uint64_t length = 4096;
  std::string input;
  /// weak-stochastic-trace: run the rule on A ⊕ A instead of A.
  bool self_join = false;
  std::string input_y;
  Rational q = Rational(1, 4);
  Rational alpha = Rational(1, 2);
  std::uint64_t k = 0;
  std::filesystem::path out = "out";
};

/// Applies `values` over the defaults. Unknown keys, bad numbers and zero
/// caps throw ParseError naming the line (or "command line").
ExperimentConfig make_config(const std::map<std::string, ConfigValue>& values);

/// Config file first, then overrides on top.
ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::map<std::string, std::string>& overrides);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  std::string kind;
  std::vector<CheckResult> checks;
  std::vector<std::string> log;
  /// Artifact file name -> contents.
  std::map<std::string, std::string> files;

  bool ok() const;
  /// "CHECK <name> <PASS|FAIL> <detail>" per line.
  std::string format() const;
};

/// Runs the experiment in memory. Errors raised by the run become a failing
/// check naming the error type.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes every artifact plus report.txt (and log.txt) into `dir`.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace stochlab
