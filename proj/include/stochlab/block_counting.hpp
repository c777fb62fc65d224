#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stochlab/bit_prefix.hpp"
#include "stochlab/permutation.hpp"
#include "stochlab/rational.hpp"
#include "stochlab/types.hpp"

namespace stochlab {

struct BignessReport {
  std::uint64_t n = 0;
  std::uint64_t sub_block = 0;
  bool is_big = false;
  std::optional<std::uint64_t> minimal_s;
  std::optional<std::uint64_t> k;
};

/// X = [i*2^n, (i+1)*2^n); big iff rho_s(pi(X)) > 1/n for some s in [1, 4^n].
BignessReport is_big(const FinitePermutation& pi, std::uint64_t n, std::uint64_t i);

struct BigCount {
  std::uint64_t count = 0;
  Rational bound;  // n * H_{2^n}
  std::vector<BignessReport> reports;
};

inline constexpr std::uint64_t kMaxCountN = 5;

/// Counts big sub-blocks and asserts count <= n*H_{2^n}. n is limited to
/// kMaxCountN because the exact bound leaves 64-bit range after that.
BigCount count_big(const FinitePermutation& pi, std::uint64_t n);

/// A permutation of the naturals known on [0, horizon).
class PermutationFragment {
 public:
  PermutationFragment() = default;
  /// Throws InvariantViolation if `image` repeats a value.
  PermutationFragment(std::string name, std::vector<std::uint64_t> image);

  static PermutationFragment from_function(std::string name,
                                           const std::function<std::uint64_t(std::uint64_t)>& f,
                                           std::uint64_t horizon);
  static PermutationFragment from_permutation(std::string name, const FinitePermutation& p);

  const std::string& name() const { return name_; }
  std::uint64_t horizon() const { return image_.size(); }
  /// HorizonError past the horizon.
  std::uint64_t operator()(std::uint64_t i) const;
  std::optional<std::uint64_t> preimage(std::uint64_t v) const;
  /// Every value below v has a preimage inside the horizon.
  bool covers_values_below(std::uint64_t v) const;

 private:
  std::string name_;
  std::vector<std::uint64_t> image_;
  std::vector<std::uint64_t> inverse_;  // UINT64_MAX where unknown
  std::uint64_t covered_prefix_ = 0;
};

/// pi-hat(i) = pi(i) - |[0, pi(i)) ∩ pi([4^n, ∞))| on [0, 4^n).
/// HorizonError if some value below an image has no known preimage.
FinitePermutation hat_permutation(const PermutationFragment& pi, std::uint64_t n);

/// rho_s(hat(X)) >= rho_s(pi(X)) for every s in [1, 4^n].
bool hat_dominates(const PermutationFragment& pi, const FinitePermutation& hat,
                   const std::vector<std::uint64_t>& x, std::uint64_t n);

/// max over t > lo of |{v in images : v < t}| / t; images need not be sorted.
Rational max_density_beyond(std::vector<std::uint64_t> images, std::uint64_t lo);

struct GreedyStage {
  std::uint64_t stage = 0;
  std::uint64_t block = 0;
  std::uint64_t sub_block = 0;
  Door begin = 0;
  Door end = 0;
  std::uint64_t sigma = 0;
  Rational threshold;
};

struct GreedyState {
  std::vector<GreedyStage> stages;
  BitPrefix prefix;  // X on [0, b_{last block + 1})
  std::optional<std::uint64_t> failed_stage;
  std::string diagnostic;
};

inline constexpr std::uint64_t kDefaultBlockCeiling = 6;

/// Stage 0 takes the first sub-block B with rho_t(pi_0(B)) <= 1/2 for all t.
/// Stage s+1 takes the first sub-block B of a later block that no pi_i,
/// i <= s+1, maps to or below sigma_s and with rho_t(pi_i(X_s ∪ B)) <=
/// 1/(s+2) for all t > sigma_s. sigma is one past the largest pi_i-preimage of
/// [0, b_{n+1}), maximised over the permutations in play.
GreedyState build_x_greedy(const std::vector<PermutationFragment>& perms,
                           std::uint64_t max_stages,
                           std::uint64_t block_ceiling = kDefaultBlockCeiling);

struct GreedyCheck {
  std::uint64_t stage;
  std::size_t perm;
  Rational max_density;
  Rational threshold;
  bool ok;
};

/// For each stage s >= 1 and i <= s: rho_t(pi_i(X)) <= threshold_s for every
/// t > sigma_{s-1} on the finished prefix; stage 0 checks pi_0 for all t.
std::vector<GreedyCheck> verify_greedy(const GreedyState& state,
                                       const std::vector<PermutationFragment>& perms);

/// Density of the block scanner's selection right after it leaves ordered
/// block n, run on A (which must reach b_{n+1}).
Rational scanner_exit_density(const BitPrefix& a, std::uint64_t n);

/// Ordered-block-preserving permutations of the naturals, known up to the
/// end of block `ceiling`.
PermutationFragment identity_fragment(std::uint64_t ceiling);
PermutationFragment swap_pairs_fragment(std::uint64_t ceiling);
/// j -> b_n + b_{n+1} - 1 - j inside each ordered block.
PermutationFragment block_reversal_fragment(std::uint64_t ceiling);
/// A seeded shuffle inside each ordered block.
PermutationFragment block_random_fragment(std::uint64_t ceiling, std::uint64_t seed);

}  // namespace stochlab
