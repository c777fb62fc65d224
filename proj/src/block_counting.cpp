#include "stochlab/block_counting.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "stochlab/density.hpp"
#include "stochlab/errors.hpp"
#include "stochlab/skip_rules.hpp"

namespace stochlab {

namespace {

std::uint64_t pow4(std::uint64_t n) {
  if (n > kMaxOrderedBlock) throw RangeError("4^" + std::to_string(n) + " is out of range");
  return std::uint64_t{1} << (2 * n);
}

Rational ratio(std::uint64_t a, std::uint64_t b) {
  return Rational(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
}

/// max over lo < t <= hi of |{v < t}| / t; `sorted` ascending.
Rational max_density_range(const std::vector<std::uint64_t>& sorted, std::uint64_t lo,
                           std::optional<std::uint64_t> hi) {
  auto below = [&](std::uint64_t t) {
    return static_cast<std::uint64_t>(std::lower_bound(sorted.begin(), sorted.end(), t) -
                                      sorted.begin());
  };
  Rational best(0);
  if (hi && *hi <= lo) return best;
  best = ratio(below(lo + 1), lo + 1);
  for (std::uint64_t v : sorted) {
    std::uint64_t t = v + 1;
    if (t <= lo) continue;
    if (hi && t > *hi) break;
    best = std::max(best, ratio(below(t), t));
  }
  return best;
}

}  // namespace

BignessReport is_big(const FinitePermutation& pi, std::uint64_t n, std::uint64_t i) {
  if (n == 0) throw OutOfRangeError("is_big needs n >= 1");
  const std::uint64_t size = pow4(n);
  const std::uint64_t len = std::uint64_t{1} << n;
  if (pi.size() != size) {
    throw LengthMismatchError("is_big: permutation of size " + std::to_string(pi.size()) +
                              " for n=" + std::to_string(n));
  }
  if (i >= len) throw OutOfRangeError("sub-block index " + std::to_string(i) + " >= 2^n");
  std::vector<std::uint8_t> hit(size, 0);
  for (std::uint64_t x = i * len; x < (i + 1) * len; ++x) hit[pi(x)] = 1;

  BignessReport out;
  out.n = n;
  out.sub_block = i;
  std::uint64_t k = 0;
  for (std::uint64_t s = 1; s <= size; ++s) {
    k += hit[s - 1];
    if (k * n > s) {
      out.is_big = true;
      out.minimal_s = s;
      out.k = k;
      break;
    }
  }
  if (out.is_big && !(*out.minimal_s < n * *out.k)) {
    throw InvariantViolation("minimal witness " + std::to_string(*out.minimal_s) +
                             " not below n*k");
  }
  return out;
}

BigCount count_big(const FinitePermutation& pi, std::uint64_t n) {
  if (n > kMaxCountN) {
    throw RangeError("count_big: the exact bound n*H_{2^n} is out of range for n=" +
                     std::to_string(n));
  }
  BigCount out;
  const std::uint64_t subs = std::uint64_t{1} << n;
  std::vector<std::uint64_t> per_k(subs + 1, 0);
  for (std::uint64_t i = 0; i < subs; ++i) {
    BignessReport r = is_big(pi, n, i);
    if (r.is_big) {
      ++out.count;
      ++per_k[*r.k];
    }
    out.reports.push_back(r);
  }
  out.bound = Rational(static_cast<std::int64_t>(n)) * harmonic_number(subs);
  // k-big blocks have disjoint images, k each, all below n*k
  for (std::uint64_t k = 1; k <= subs; ++k) {
    std::uint64_t upto = 0;
    for (std::uint64_t j = 1; j <= k; ++j) upto += per_k[j] * j;
    if (upto > n * k) {
      throw InvariantViolation("count_big: big sub-blocks need " + std::to_string(upto) +
                               " images below " + std::to_string(n * k));
    }
  }
  if (ratio(out.count, 1) > out.bound) {
    throw InvariantViolation("count_big: " + std::to_string(out.count) + " big sub-blocks exceed " +
                             out.bound.str());
  }
  return out;
}

PermutationFragment::PermutationFragment(std::string name, std::vector<std::uint64_t> image)
    : name_(std::move(name)), image_(std::move(image)) {
  std::uint64_t max_v = 0;
  for (auto v : image_) max_v = std::max(max_v, v + 1);
  inverse_.assign(max_v, UINT64_MAX);
  for (std::uint64_t i = 0; i < image_.size(); ++i) {
    std::uint64_t v = image_[i];
    if (inverse_[v] != UINT64_MAX) {
      throw InvariantViolation("permutation fragment '" + name_ + "' repeats value " +
                               std::to_string(v) + " at " + std::to_string(i));
    }
    inverse_[v] = i;
  }
  while (covered_prefix_ < inverse_.size() && inverse_[covered_prefix_] != UINT64_MAX) {
    ++covered_prefix_;
  }
}

PermutationFragment PermutationFragment::from_function(
    std::string name, const std::function<std::uint64_t(std::uint64_t)>& f,
    std::uint64_t horizon) {
  std::vector<std::uint64_t> image(horizon);
  for (std::uint64_t i = 0; i < horizon; ++i) image[i] = f(i);
  return PermutationFragment(std::move(name), std::move(image));
}

PermutationFragment PermutationFragment::from_permutation(std::string name,
                                                          const FinitePermutation& p) {
  return PermutationFragment(std::move(name), p.forward());
}

std::uint64_t PermutationFragment::operator()(std::uint64_t i) const {
  if (i >= image_.size()) {
    throw HorizonError("permutation '" + name_ + "' is known only below " +
                       std::to_string(image_.size()) + ", asked for " + std::to_string(i));
  }
  return image_[i];
}

std::optional<std::uint64_t> PermutationFragment::preimage(std::uint64_t v) const {
  if (v >= inverse_.size() || inverse_[v] == UINT64_MAX) return std::nullopt;
  return inverse_[v];
}

bool PermutationFragment::covers_values_below(std::uint64_t v) const {
  return v <= covered_prefix_;
}

FinitePermutation hat_permutation(const PermutationFragment& pi, std::uint64_t n) {
  const std::uint64_t size = pow4(n);
  std::uint64_t max_image = 0;
  for (std::uint64_t i = 0; i < size; ++i) max_image = std::max(max_image, pi(i));
  if (!pi.covers_values_below(max_image)) {
    throw HorizonError("permutation '" + pi.name() + "' does not reveal every preimage below " +
                       std::to_string(max_image));
  }
  // outside[v] = |[0, v) ∩ pi([4^n, ∞))|
  std::vector<std::uint64_t> outside(max_image + 1, 0);
  for (std::uint64_t v = 0; v < max_image; ++v) {
    outside[v + 1] = outside[v] + (*pi.preimage(v) >= size ? 1 : 0);
  }
  std::vector<std::uint64_t> hat(size);
  for (std::uint64_t i = 0; i < size; ++i) hat[i] = pi(i) - outside[pi(i)];
  return FinitePermutation(std::move(hat));
}

bool hat_dominates(const PermutationFragment& pi, const FinitePermutation& hat,
                   const std::vector<std::uint64_t>& x, std::uint64_t n) {
  const std::uint64_t size = pow4(n);
  std::vector<std::uint64_t> a, b;
  for (auto v : x) {
    a.push_back(hat(v));
    b.push_back(pi(v));
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::uint64_t s = 1; s <= size; ++s) {
    auto ca = std::lower_bound(a.begin(), a.end(), s) - a.begin();
    auto cb = std::lower_bound(b.begin(), b.end(), s) - b.begin();
    if (ca < cb) return false;
  }
  return true;
}

Rational max_density_beyond(std::vector<std::uint64_t> images, std::uint64_t lo) {
  std::sort(images.begin(), images.end());
  return max_density_range(images, lo, std::nullopt);
}

namespace {

std::vector<std::uint64_t> images_of(const PermutationFragment& p,
                                     const std::vector<std::uint64_t>& xs) {
  std::vector<std::uint64_t> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(p(x));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t sigma_for(const std::vector<PermutationFragment>& perms, std::size_t upto,
                        std::uint64_t bound) {
  std::uint64_t sigma = 0;
  for (std::size_t i = 0; i <= upto; ++i) {
    if (!perms[i].covers_values_below(bound)) {
      throw HorizonError("permutation '" + perms[i].name() +
                         "' does not reveal every preimage below " + std::to_string(bound));
    }
    for (std::uint64_t v = 0; v < bound; ++v) sigma = std::max(sigma, *perms[i].preimage(v) + 1);
  }
  return sigma;
}

}  // namespace

GreedyState build_x_greedy(const std::vector<PermutationFragment>& perms,
                           std::uint64_t max_stages, std::uint64_t block_ceiling) {
  if (perms.empty()) throw OutOfRangeError("build_x_greedy needs at least one permutation");
  GreedyState state;
  std::vector<std::uint64_t> x;
  std::uint64_t next_block = 0;
  std::uint64_t sigma = 0;

  for (std::uint64_t s = 0; s < max_stages; ++s) {
    const std::size_t upto = std::min<std::size_t>(s, perms.size() - 1);
    const Rational threshold = s == 0 ? Rational(1, 2) : Rational(1, static_cast<std::int64_t>(s + 1));
    std::optional<GreedyStage> found;
    try {
      for (std::uint64_t n = next_block; n <= block_ceiling && !found; ++n) {
        const OrderedBlockLayout blk = ordered_block(n);
        if (s > 0) {
          bool clear = true;
          for (std::size_t i = 0; i <= upto && clear; ++i) {
            for (Door j = blk.start; j < blk.end; ++j) {
              if (perms[i](j) <= sigma) {
                clear = false;
                break;
              }
            }
          }
          if (!clear) continue;
        }
        for (std::uint64_t sb = 0; sb < blk.sub_block_count && !found; ++sb) {
          std::vector<std::uint64_t> cand = x;
          for (Door j = blk.sub_block_begin(sb); j < blk.sub_block_end(sb); ++j) cand.push_back(j);
          bool ok = true;
          for (std::size_t i = 0; i <= upto && ok; ++i) {
            ok = max_density_range(images_of(perms[i], cand), s == 0 ? 0 : sigma, std::nullopt) <=
                 threshold;
          }
          if (!ok) continue;
          GreedyStage st;
          st.stage = s;
          st.block = n;
          st.sub_block = sb;
          st.begin = blk.sub_block_begin(sb);
          st.end = blk.sub_block_end(sb);
          st.threshold = threshold;
          st.sigma = sigma_for(perms, upto, blk.end);
          found = st;
        }
      }
    } catch (const HorizonError& e) {
      state.failed_stage = s;
      state.diagnostic = e.what();
      break;
    }
    if (!found) {
      state.failed_stage = s;
      state.diagnostic = "no qualifying sub-block in blocks " + std::to_string(next_block) +
                         ".." + std::to_string(block_ceiling);
      break;
    }
    for (Door j = found->begin; j < found->end; ++j) x.push_back(j);
    sigma = found->sigma;
    next_block = found->block + 1;
    state.stages.push_back(*found);
  }

  const std::uint64_t len = state.stages.empty() ? 0 : ordered_block(state.stages.back().block).end;
  state.prefix = BitPrefix(len);
  for (auto j : x) state.prefix.set(j, true);
  return state;
}

std::vector<GreedyCheck> verify_greedy(const GreedyState& state,
                                       const std::vector<PermutationFragment>& perms) {
  std::vector<GreedyCheck> out;
  const std::vector<Door> x = state.prefix.members();
  for (std::size_t k = 0; k < state.stages.size(); ++k) {
    const GreedyStage& st = state.stages[k];
    const std::uint64_t lo = k == 0 ? 0 : state.stages[k - 1].sigma;
    const std::size_t upto = std::min<std::size_t>(st.stage, perms.size() - 1);
    for (std::size_t i = 0; i <= upto; ++i) {
      Rational m = max_density_range(images_of(perms[i], x), lo, std::nullopt);
      out.push_back({st.stage, i, m, st.threshold, m <= st.threshold});
    }
  }
  return out;
}

Rational scanner_exit_density(const BitPrefix& a, std::uint64_t n) {
  const OrderedBlockLayout blk = ordered_block(n);
  if (a.size() < blk.end) {
    throw OutOfRangeError("scanner_exit_density: prefix ends before block " + std::to_string(n));
  }
  SkipResult r = apply_skip_rule(block_scanner(), a, a.size());
  std::uint64_t m = 0;
  while (m < r.trace.size() && r.trace.entries()[m].door < blk.end) ++m;
  if (m == 0) throw InvariantViolation("scanner selected nothing before leaving block");
  return rho(r.selected, m);
}

namespace {

std::uint64_t horizon_for(std::uint64_t ceiling) { return ordered_block(ceiling).end; }

}  // namespace

PermutationFragment identity_fragment(std::uint64_t ceiling) {
  return PermutationFragment::from_function("identity", [](std::uint64_t i) { return i; },
                                            horizon_for(ceiling));
}

PermutationFragment swap_pairs_fragment(std::uint64_t ceiling) {
  // block 0 is the single door 0; pair up inside every later block
  return PermutationFragment::from_function(
      "swap-pairs",
      [](std::uint64_t i) {
        if (i == 0) return i;
        return ((i - 1) ^ 1U) + 1;
      },
      horizon_for(ceiling));
}

PermutationFragment block_reversal_fragment(std::uint64_t ceiling) {
  return PermutationFragment::from_function(
      "block-reversal",
      [](std::uint64_t i) {
        const OrderedBlockLayout blk = ordered_block(locate_ordered(i).n);
        return blk.start + blk.end - 1 - i;
      },
      horizon_for(ceiling));
}

PermutationFragment block_random_fragment(std::uint64_t ceiling, std::uint64_t seed) {
  std::vector<std::uint64_t> image(horizon_for(ceiling));
  std::iota(image.begin(), image.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::uint64_t n = 0; n <= ceiling; ++n) {
    const OrderedBlockLayout blk = ordered_block(n);
    std::shuffle(image.begin() + static_cast<std::ptrdiff_t>(blk.start),
                 image.begin() + static_cast<std::ptrdiff_t>(blk.end), rng);
  }
  return PermutationFragment("random(" + std::to_string(seed) + ")", std::move(image));
}

}  // namespace stochlab
