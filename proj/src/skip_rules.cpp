#include "stochlab/skip_rules.hpp"

#include <algorithm>

#include "stochlab/density.hpp"
#include "stochlab/errors.hpp"

namespace stochlab {

void SkipSequence::push(SkipEntry e) {
  if (!entries_.empty() && e.door <= entries_.back().door) {
    throw ContractViolation("skip sequence door " + std::to_string(e.door) +
                                " does not exceed " + std::to_string(entries_.back().door),
                            entries_.size());
  }
  entries_.push_back(e);
}

SkipRule::SkipRule(std::string name, Factory factory)
    : name_(std::move(name)), factory_(std::move(factory)) {}

Door SkipRule::next(const SkipSequence& sigma) const {
  auto s = session();
  for (const auto& e : sigma.entries()) s->observe(e);
  return s->propose();
}

namespace {

class LastEntrySession : public SkipSession {
 public:
  explicit LastEntrySession(std::function<Door(const std::optional<SkipEntry>&)> step)
      : step_(std::move(step)) {}

  Door propose() override { return step_(last_); }
  void observe(SkipEntry e) override { last_ = e; }

 private:
  std::function<Door(const std::optional<SkipEntry>&)> step_;
  std::optional<SkipEntry> last_;
};

class HalvedSession : public SkipSession {
 public:
  HalvedSession(std::unique_ptr<SkipSession> inner, std::string name)
      : inner_(std::move(inner)), name_(std::move(name)) {}

  Door propose() override {
    for (;;) {
      Door d = inner_->propose();
      check_inner(d);
      Door k = d / 2;
      if (last_k_ && *last_k_ == k) {
        // f asks for 2k+1 right after 2k: same bit in the doubled history
        feed_inner({d, last_bit_});
        continue;
      }
      pending_ = d;
      return k;
    }
  }

  void observe(SkipEntry e) override {
    Door d = (pending_ && *pending_ / 2 == e.door) ? *pending_ : 2 * e.door;
    pending_.reset();
    check_inner(d);
    feed_inner({d, e.content});
    last_k_ = e.door;
    last_bit_ = e.content;
  }

 private:
  void check_inner(Door d) const {
    if (inner_last_ && d <= *inner_last_) {
      throw ContractViolation("rule '" + name_ + "' is not orderly: door " + std::to_string(d) +
                                  " after " + std::to_string(*inner_last_),
                              inner_steps_);
    }
  }

  void feed_inner(SkipEntry e) {
    inner_->observe(e);
    inner_last_ = e.door;
    ++inner_steps_;
  }

  std::unique_ptr<SkipSession> inner_;
  std::string name_;
  std::optional<Door> pending_;
  std::optional<Door> last_k_;
  bool last_bit_ = false;
  std::optional<Door> inner_last_;
  std::uint64_t inner_steps_ = 0;
};

}  // namespace

SkipRule last_entry_rule(std::string name,
                         std::function<Door(const std::optional<SkipEntry>&)> step) {
  return SkipRule(std::move(name),
                  [step]() { return std::make_unique<LastEntrySession>(step); });
}

SkipRule next_door_rule() {
  return last_entry_rule("next-door", [](const std::optional<SkipEntry>& last) -> Door {
    return last ? last->door + 1 : 0;
  });
}

SkipRule stride_rule(std::uint64_t k) {
  if (k == 0) throw OutOfRangeError("skip(k) needs k >= 1");
  return last_entry_rule("skip(" + std::to_string(k) + ")",
                         [k](const std::optional<SkipEntry>& last) -> Door {
                           return last ? last->door + k : 0;
                         });
}

SkipRule block_scanner() {
  return last_entry_rule("block-scanner", [](const std::optional<SkipEntry>& last) -> Door {
    if (!last) return 0;
    const Door d = last->door;
    const OrderedPosition pos = locate_ordered(d);
    const OrderedBlockLayout blk = ordered_block(pos.n);
    if (pos.offset == 0 && !last->content) {
      return pos.sub_block + 1 < blk.sub_block_count ? blk.sub_block_begin(pos.sub_block + 1)
                                                     : blk.end;
    }
    // inside a sub-block whose first bit was a car: take the rest of it
    return pos.offset + 1 < blk.sub_block_len ? d + 1 : blk.end;
  });
}

SkipRule even_odd_rule() {
  return last_entry_rule("even-odd", [](const std::optional<SkipEntry>& last) -> Door {
    if (!last) return 0;
    if (last->door % 2 == 1) return last->door + 1;
    return last->content ? last->door + 1 : last->door + 2;
  });
}

SkipRule halve_rule(const SkipRule& f) {
  std::string name = "halved(" + f.name() + ")";
  return SkipRule(name, [f, name]() { return std::make_unique<HalvedSession>(f.session(), name); });
}

SkipResult apply_skip_rule(const SkipRule& f, const BitPrefix& a, std::uint64_t max_steps) {
  SkipResult out;
  std::vector<std::uint8_t> bits;
  auto s = f.session();
  for (std::uint64_t step = 0; step < max_steps; ++step) {
    Door d = s->propose();
    if (!out.trace.empty() && d <= out.trace.back().door) {
      throw ContractViolation("rule '" + f.name() + "' is not orderly: door " +
                                  std::to_string(d) + " after " +
                                  std::to_string(out.trace.back().door),
                              step);
    }
    if (d >= a.size()) break;
    SkipEntry e{d, a[d]};
    out.trace.push(e);
    bits.push_back(e.content ? 1 : 0);
    s->observe(e);
  }
  out.selected = BitPrefix(std::move(bits));
  return out;
}

OrderedBlockLayout ordered_block(std::uint64_t n) {
  if (n > kMaxOrderedBlock) {
    throw RangeError("ordered block " + std::to_string(n) + " exceeds index range");
  }
  const std::uint64_t pow4 = std::uint64_t{1} << (2 * n);
  OrderedBlockLayout out;
  out.n = n;
  out.start = (pow4 - 1) / 3;
  out.end = out.start + pow4;
  out.sub_block_len = std::uint64_t{1} << n;
  out.sub_block_count = out.sub_block_len;
  return out;
}

OrderedPosition locate_ordered(Door d) {
  for (std::uint64_t n = 0; n <= kMaxOrderedBlock; ++n) {
    OrderedBlockLayout blk = ordered_block(n);
    if (d < blk.end) {
      std::uint64_t rel = d - blk.start;
      return {n, rel / blk.sub_block_len, rel % blk.sub_block_len};
    }
  }
  throw RangeError("door " + std::to_string(d) + " beyond the last ordered block");
}

HalvingComparison compare_halving(const SkipRule& f, const BitPrefix& a, std::uint64_t max_steps) {
  HalvingComparison out;
  const SkipResult rf = apply_skip_rule(f, join(a, a), max_steps);
  const SkipResult rg = apply_skip_rule(halve_rule(f), a, max_steps);
  out.f_steps = rf.trace.size();
  out.g_steps = rg.trace.size();

  // g's doors must be f's halves with immediate repeats removed
  std::vector<Door> halves;
  std::vector<std::uint64_t> distinct_upto(rf.trace.size());
  for (std::size_t m = 0; m < rf.trace.size(); ++m) {
    Door k = rf.trace.entries()[m].door / 2;
    if (halves.empty() || halves.back() != k) halves.push_back(k);
    distinct_upto[m] = halves.size();
  }
  const auto& ge = rg.trace.entries();
  std::size_t common = std::min(halves.size(), ge.size());
  out.traces_consistent = true;
  for (std::size_t j = 0; j < common; ++j) {
    if (halves[j] != ge[j].door) {
      out.traces_consistent = false;
      break;
    }
  }

  out.pointwise_ok = true;
  std::uint64_t ones_f = 0;
  for (std::size_t m = 0; m < rf.trace.size(); ++m) {
    if (rf.selected[m]) ++ones_f;
    std::uint64_t mp = distinct_upto[m];
    if (mp > ge.size()) break;
    Rational lhs = rho(rg.selected, mp) * Rational(2);
    Rational rhs(static_cast<std::int64_t>(ones_f), static_cast<std::int64_t>(m + 1));
    if (lhs < rhs) {
      out.pointwise_ok = false;
      out.first_violation = m + 1;
      break;
    }
  }
  if (rf.trace.size() > 0) out.max_rho_f = density_profile(rf.selected, 1).max_rho;
  if (rg.trace.size() > 0) out.max_rho_g = density_profile(rg.selected, 1).max_rho;
  return out;
}

}  // namespace stochlab
