#include "stochlab/disordered_block.hpp"

#include <algorithm>

#include "stochlab/checked.hpp"
#include "stochlab/errors.hpp"

namespace stochlab {

BlockSizing BlockSizing::large(std::uint64_t s) {
  if (s == 0) throw OutOfRangeError("large sizing needs stage s >= 1");
  BlockSizing out;
  out.kind = Kind::large;
  out.stage = s;
  return out;
}

BlockSizing BlockSizing::fixed(std::uint64_t if_len) {
  if (if_len == 0) throw OutOfRangeError("fixed sizing needs IF length >= 1");
  BlockSizing out;
  out.kind = Kind::fixed;
  out.if_len = if_len;
  return out;
}

std::optional<std::uint64_t> BlockSizing::if_length(Time t) const {
  if (kind == Kind::fixed) return if_len;
  auto s2 = checked_mul(stage, stage);
  if (!s2) return std::nullopt;
  auto s3 = checked_mul(*s2, stage);
  if (!s3) return std::nullopt;
  auto base = checked_add(t, *s3);
  if (!base) return std::nullopt;
  auto prod = checked_mul(*base, stage);
  if (!prod) return std::nullopt;
  return checked_add(*prod, 1);
}

std::string BlockSizing::describe() const {
  if (kind == Kind::fixed) return "fixed(" + std::to_string(if_len) + ")";
  return "large(s=" + std::to_string(stage) + ")";
}

DisorderedBlock DisorderedBlock::translation(Time t, Door d, std::uint64_t len) {
  if (!checked_add(t, len) || !checked_add(d, len)) {
    throw RangeError("translation block overflows the index type");
  }
  DisorderedBlock b;
  b.level_ = 0;
  b.time_begin_ = t;
  b.door_begin_ = d;
  b.size_ = len;
  b.if_len_ = len;
  return b;
}

DisorderedBlock DisorderedBlock::compose(Time t, Door d, std::vector<DisorderedBlock> subs) {
  if (subs.empty()) throw InvariantViolation("compose: a nested block needs sub-blocks");
  const std::uint64_t k = subs.size();
  const std::uint64_t sub_level = subs.front().level();
  Time next_time = t + k;
  Door next_door = d;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& sb = subs[i];
    if (sb.level() != sub_level) {
      throw InvariantViolation("compose: sub-block " + std::to_string(i) + " has level " +
                               std::to_string(sb.level()) + ", expected " +
                               std::to_string(sub_level));
    }
    if (sb.time_begin() != next_time || sb.door_begin() != next_door + 1) {
      throw InvariantViolation("compose: sub-block " + std::to_string(i) +
                               " is not in canonical position");
    }
    next_time = sb.time_end();
    next_door = sb.door_end();
  }
  DisorderedBlock b;
  b.level_ = sub_level + 1;
  b.time_begin_ = t;
  b.door_begin_ = d;
  b.size_ = next_door - d;
  b.if_len_ = k;
  b.sub_blocks_ = std::move(subs);
  if (b.time_end() != next_time) throw InvariantViolation("compose: time and door spans differ");
  return b;
}

Door DisorderedBlock::first_door() const {
  if (empty()) throw OutOfRangeError("empty block has no first door");
  return door_begin_;
}

Door DisorderedBlock::last_door() const {
  if (empty()) throw OutOfRangeError("empty block has no last door");
  return door_end() - 1;
}

Door DisorderedBlock::if_door(std::uint64_t i) const {
  if (i >= if_len_) {
    throw OutOfRangeError("IF index " + std::to_string(i) + " >= |IF| = " +
                          std::to_string(if_len_));
  }
  if (level_ == 0) return door_begin_ + i;
  return sub_blocks_[i].door_begin() - 1;
}

std::vector<Door> DisorderedBlock::if_doors() const {
  std::vector<Door> out(if_len_);
  for (std::uint64_t i = 0; i < if_len_; ++i) out[i] = if_door(i);
  return out;
}

Door DisorderedBlock::eval(Time t) const {
  if (!contains_time(t)) {
    throw OutOfRangeError("time " + std::to_string(t) + " outside block times [" +
                          std::to_string(time_begin_) + ", " + std::to_string(time_end()) + ")");
  }
  if (t < time_begin_ + if_len_) return if_door(t - time_begin_);
  auto it = std::upper_bound(sub_blocks_.begin(), sub_blocks_.end(), t,
                             [](Time v, const DisorderedBlock& b) { return v < b.time_begin(); });
  return std::prev(it)->eval(t);
}

Time DisorderedBlock::time_of(Door d) const {
  if (!contains_door(d)) {
    throw OutOfRangeError("door " + std::to_string(d) + " outside block doors [" +
                          std::to_string(door_begin_) + ", " + std::to_string(door_end()) + ")");
  }
  if (level_ == 0) return time_begin_ + (d - door_begin_);
  // first sub-block starting after d; the IF door of that sub-block may be d
  auto it = std::upper_bound(sub_blocks_.begin(), sub_blocks_.end(), d,
                             [](Door v, const DisorderedBlock& b) { return v < b.door_begin(); });
  if (it != sub_blocks_.end() && it->door_begin() == d + 1) {
    return time_begin_ + static_cast<Time>(it - sub_blocks_.begin());
  }
  return std::prev(it)->time_of(d);
}

std::vector<std::pair<Time, Door>> DisorderedBlock::graph() const {
  std::vector<std::pair<Time, Door>> out;
  out.reserve(size_);
  for (std::uint64_t i = 0; i < if_len_; ++i) out.emplace_back(time_begin_ + i, if_door(i));
  for (const auto& sb : sub_blocks_) {
    auto g = sb.graph();
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

namespace {

struct SizeResult {
  std::uint64_t size = 0;
  bool overflow = false;
  bool over_cap = false;
};

SizeResult size_capped(std::uint64_t level, Time t, const BlockSizing& sizing,
                       std::uint64_t cap) {
  SizeResult r;
  auto k = sizing.if_length(t);
  if (!k) return {0, true, false};
  if (level == 0) {
    r.size = *k;
    r.over_cap = r.size > cap;
    return r;
  }
  std::uint64_t total = *k;
  auto tn = checked_add(t, *k);
  if (!tn) return {0, true, false};
  Time next = *tn;
  for (std::uint64_t i = 0; i < *k; ++i) {
    if (total > cap) return {total, false, true};
    SizeResult sub = size_capped(level - 1, next, sizing, cap);
    if (sub.overflow || sub.over_cap) return sub;
    auto nt = checked_add(total, sub.size);
    auto nn = checked_add(next, sub.size);
    if (!nt || !nn) return {0, true, false};
    total = *nt;
    next = *nn;
  }
  r.size = total;
  r.over_cap = total > cap;
  return r;
}

DisorderedBlock build_unchecked(std::uint64_t level, Time t, Door d, const BlockSizing& sizing) {
  const std::uint64_t k = *sizing.if_length(t);
  if (level == 0) return DisorderedBlock::translation(t, d, k);
  std::vector<DisorderedBlock> subs;
  subs.reserve(k);
  Time next_time = t + k;
  Door next_door = d + 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    subs.push_back(build_unchecked(level - 1, next_time, next_door, sizing));
    next_time = subs.back().time_end();
    next_door = subs.back().door_end() + 1;
  }
  return DisorderedBlock::compose(t, d, std::move(subs));
}

}  // namespace

std::optional<std::uint64_t> block_size(std::uint64_t level, Time t, const BlockSizing& sizing) {
  SizeResult r = size_capped(level, t, sizing, UINT64_MAX);
  if (r.overflow) return std::nullopt;
  return r.size;
}

DisorderedBlock build_block(std::uint64_t level, Time t, Door d, const BlockSizing& sizing,
                            std::uint64_t max_doors) {
  SizeResult r = size_capped(level, t, sizing, max_doors);
  const std::string what = "level-" + std::to_string(level) + " block at time " +
                           std::to_string(t) + " with sizing " + sizing.describe();
  if (r.overflow) throw RangeError(what + " overflows 64-bit indices");
  if (r.over_cap) {
    throw RangeError(what + " exceeds the capacity of " + std::to_string(max_doors) + " doors");
  }
  if (!checked_add(d, r.size)) throw RangeError(what + " overflows the door range");
  return build_unchecked(level, t, d, sizing);
}

DisorderedBlock construct_db(std::uint64_t s, std::uint64_t l, Time t, Door d,
                             std::uint64_t max_doors) {
  return build_block(l, t, d, BlockSizing::large(s), max_doors);
}

namespace {

HostPermutation assemble(std::uint64_t stages, std::optional<std::uint64_t> fixed_len,
                         std::uint64_t max_doors) {
  HostPermutation h;
  h.sizing = fixed_len ? BlockSizing::Kind::fixed : BlockSizing::Kind::large;
  h.fixed_if_len = fixed_len.value_or(0);
  h.blocks.push_back(DisorderedBlock::translation(0, 0, 0));
  std::uint64_t total = 0;
  for (std::uint64_t s = 1; s <= stages; ++s) {
    BlockSizing sizing = fixed_len ? BlockSizing::fixed(*fixed_len) : BlockSizing::large(s);
    try {
      h.blocks.push_back(build_block(s, total, total, sizing, max_doors - total));
    } catch (const RangeError& e) {
      throw RangeError("construct_h stage " + std::to_string(s) + ": " + e.what());
    }
    total = h.blocks.back().time_end();
  }
  h.total_len = total;
  return h;
}

}  // namespace

HostPermutation construct_h(std::uint64_t stages, std::uint64_t max_doors) {
  return assemble(stages, std::nullopt, max_doors);
}

HostPermutation construct_h_fixed(std::uint64_t stages, std::uint64_t if_len,
                                  std::uint64_t max_doors) {
  return assemble(stages, if_len, max_doors);
}

Door h_eval(const HostPermutation& h, Time t) {
  if (t >= h.total_len) {
    throw OutOfRangeError("h_eval: time " + std::to_string(t) + " >= total length " +
                          std::to_string(h.total_len));
  }
  auto it = std::upper_bound(h.blocks.begin(), h.blocks.end(), t,
                             [](Time v, const DisorderedBlock& b) { return v < b.time_end(); });
  return it->eval(t);
}

Time h_inverse(const HostPermutation& h, Door d) {
  if (d >= h.total_len) {
    throw OutOfRangeError("h_inverse: door " + std::to_string(d) + " >= total length " +
                          std::to_string(h.total_len));
  }
  auto it = std::upper_bound(h.blocks.begin(), h.blocks.end(), d,
                             [](Door v, const DisorderedBlock& b) { return v < b.door_end(); });
  return it->time_of(d);
}

namespace {

AuditResult fail(std::string detail) { return {false, std::move(detail)}; }

AuditResult check_graph(const std::vector<std::pair<Time, Door>>& g, Time t0, Door d0,
                        std::uint64_t len) {
  if (g.size() != len) {
    return fail("graph has " + std::to_string(g.size()) + " entries, expected " +
                std::to_string(len));
  }
  std::vector<std::uint8_t> seen(len, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto [t, d] = g[i];
    if (t != t0 + i) return fail("time " + std::to_string(t) + " out of sequence");
    if (d < d0 || d >= d0 + len) return fail("door " + std::to_string(d) + " outside range");
    if (seen[d - d0]) return fail("door " + std::to_string(d) + " hit twice");
    seen[d - d0] = 1;
  }
  return {};
}

}  // namespace

AuditResult audit_bijection(const DisorderedBlock& block) {
  return check_graph(block.graph(), block.time_begin(), block.door_begin(), block.size());
}

AuditResult audit_bijection(const HostPermutation& h) {
  std::vector<std::pair<Time, Door>> g;
  g.reserve(h.total_len);
  for (Time t = 0; t < h.total_len; ++t) g.emplace_back(t, h_eval(h, t));
  AuditResult r = check_graph(g, 0, 0, h.total_len);
  if (!r.ok) return r;
  for (Time t = 0; t < h.total_len; ++t) {
    if (h_inverse(h, g[t].second) != t) {
      return fail("inverse disagrees at time " + std::to_string(t));
    }
  }
  return r;
}

AuditResult audit_gap_filling(const DisorderedBlock& block) {
  if (block.level() == 0) {
    if (!block.sub_blocks().empty()) return fail("level-0 block with sub-blocks");
    if (block.if_len() != block.size()) return fail("level-0 IF is not the whole block");
    return {};
  }
  const auto& subs = block.sub_blocks();
  if (subs.size() != block.if_len()) {
    return fail("block at door " + std::to_string(block.door_begin()) + " has " +
                std::to_string(subs.size()) + " sub-blocks for |IF| = " +
                std::to_string(block.if_len()));
  }
  Door cursor = block.door_begin();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (block.if_door(i) != cursor) {
      return fail("IF door " + std::to_string(i) + " is not at " + std::to_string(cursor));
    }
    if (subs[i].door_begin() != cursor + 1) {
      return fail("sub-block " + std::to_string(i) + " does not follow its IF door");
    }
    AuditResult inner = audit_gap_filling(subs[i]);
    if (!inner.ok) return inner;
    cursor = subs[i].door_end();
  }
  if (cursor != block.door_end()) return fail("sub-blocks leave a gap before the block end");
  return {};
}

AuditResult audit_levels(const DisorderedBlock& block) {
  if (block.level() == 0) {
    if (!block.sub_blocks().empty()) return fail("level-0 block with sub-blocks");
    if (!block.empty() && block.eval(block.time_end() - 1) - block.eval(block.time_begin()) !=
                              block.size() - 1) {
      return fail("level-0 block is not a translation");
    }
    return {};
  }
  for (const auto& sb : block.sub_blocks()) {
    if (sb.level() + 1 != block.level()) {
      return fail("sub-block at door " + std::to_string(sb.door_begin()) + " has level " +
                  std::to_string(sb.level()) + " under level " + std::to_string(block.level()));
    }
    AuditResult inner = audit_levels(sb);
    if (!inner.ok) return inner;
  }
  return {};
}

AuditResult audit_concatenation(const HostPermutation& h) {
  if (h.blocks.empty() || !h.blocks[0].empty()) return fail("DB_0 must be the empty block");
  for (std::size_t s = 1; s < h.blocks.size(); ++s) {
    const auto& prev = h.blocks[s - 1];
    const auto& cur = h.blocks[s];
    if (cur.level() != s) {
      return fail("block " + std::to_string(s) + " has level " + std::to_string(cur.level()));
    }
    if (cur.time_begin() != prev.time_end() || cur.door_begin() != prev.door_end()) {
      return fail("block " + std::to_string(s) + " does not start where block " +
                  std::to_string(s - 1) + " ends");
    }
  }
  if (h.blocks.back().time_end() != h.total_len) return fail("total length mismatch");
  return {};
}

bool largeness_ok(const DisorderedBlock& block, std::uint64_t s) {
  BlockSizing bound = BlockSizing::large(std::max<std::uint64_t>(s, 1));
  std::optional<std::uint64_t> need;
  if (s == 0) {
    need = 0;
  } else {
    need = bound.if_length(block.time_begin());
    if (!need) return false;
    *need -= 1;  // the condition is >=, the construction adds one
  }
  if (block.if_len() < *need) return false;
  for (const auto& sb : block.sub_blocks()) {
    if (!largeness_ok(sb, s)) return false;
  }
  return true;
}

}  // namespace stochlab
