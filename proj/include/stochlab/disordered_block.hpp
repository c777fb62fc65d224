#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stochlab/types.hpp"

namespace stochlab {

/// How long the increasing part of a block starting at time t is.
///
/// `large` is the largeness sizing (t + s^3)*s + 1. `fixed` uses a constant
/// length and exists because the large sizing overflows 64 bits past stage 1.
struct BlockSizing {
  enum class Kind { large, fixed };

  Kind kind = Kind::large;
  std::uint64_t stage = 1;
  std::uint64_t if_len = 0;

  static BlockSizing large(std::uint64_t s);
  static BlockSizing fixed(std::uint64_t if_len);

  /// nullopt on overflow.
  std::optional<std::uint64_t> if_length(Time t) const;
  std::string describe() const;
};

/// Bijection from a time interval onto a door interval of the same length:
/// an increasing part (IF) followed by if_len sub-blocks of level-1.
///
/// Canonical layout: doors run (IF 0)(SB_0)(IF 1)(SB_1)...; times run IF
/// first, then SB_0, SB_1, .... A level-0 block is a translation and its own
/// increasing part.
class DisorderedBlock {
 public:
  DisorderedBlock() = default;

  static DisorderedBlock translation(Time t, Door d, std::uint64_t len);
  /// Assembles a block of level sub.level+1 from an IF of length subs.size().
  /// Throws InvariantViolation unless the parts sit in the canonical layout
  /// starting at (t, d).
  static DisorderedBlock compose(Time t, Door d, std::vector<DisorderedBlock> subs);

  std::uint64_t level() const { return level_; }
  Time time_begin() const { return time_begin_; }
  Time time_end() const { return time_begin_ + size_; }
  Door door_begin() const { return door_begin_; }
  Door door_end() const { return door_begin_ + size_; }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::uint64_t if_len() const { return if_len_; }
  const std::vector<DisorderedBlock>& sub_blocks() const { return sub_blocks_; }

  /// ⌊DB⌋ and ⌈DB⌉; throw on an empty block.
  Door first_door() const;
  Door last_door() const;

  bool contains_door(Door d) const { return d >= door_begin_ && d < door_end(); }
  bool contains_time(Time t) const { return t >= time_begin_ && t < time_end(); }

  Door if_door(std::uint64_t i) const;
  std::vector<Door> if_doors() const;
  /// Door opened at time t; OutOfRangeError outside the time domain.
  Door eval(Time t) const;
  /// Inverse of eval; OutOfRangeError outside the door range.
  Time time_of(Door d) const;
  /// (time, door) pairs in time order.
  std::vector<std::pair<Time, Door>> graph() const;

 private:
  std::uint64_t level_ = 0;
  Time time_begin_ = 0;
  Door door_begin_ = 0;
  std::uint64_t size_ = 0;
  std::uint64_t if_len_ = 0;
  std::vector<DisorderedBlock> sub_blocks_;
};

inline constexpr std::uint64_t kDefaultMaxDoors = std::uint64_t{1} << 24;

/// Size of the block build_block would produce, or nullopt on overflow.
std::optional<std::uint64_t> block_size(std::uint64_t level, Time t, const BlockSizing& sizing);

/// Throws RangeError on overflow or if the block would exceed max_doors.
DisorderedBlock build_block(std::uint64_t level, Time t, Door d, const BlockSizing& sizing,
                            std::uint64_t max_doors = kDefaultMaxDoors);

/// Block of level l at stage s with the largeness sizing.
DisorderedBlock construct_db(std::uint64_t s, std::uint64_t l, Time t, Door d,
                             std::uint64_t max_doors = kDefaultMaxDoors);

/// h = DB_0 DB_1 ... DB_stages, DB_0 empty, DB_s of level s.
struct HostPermutation {
  std::vector<DisorderedBlock> blocks;
  std::uint64_t total_len = 0;
  BlockSizing::Kind sizing = BlockSizing::Kind::large;
  std::uint64_t fixed_if_len = 0;

  std::size_t stages() const { return blocks.empty() ? 0 : blocks.size() - 1; }
};

HostPermutation construct_h(std::uint64_t stages, std::uint64_t max_doors = kDefaultMaxDoors);
/// Same assembly with a constant IF length for every block.
HostPermutation construct_h_fixed(std::uint64_t stages, std::uint64_t if_len,
                                  std::uint64_t max_doors = kDefaultMaxDoors);

Door h_eval(const HostPermutation& h, Time t);
/// Time at which h opens door d.
Time h_inverse(const HostPermutation& h, Door d);

struct AuditResult {
  bool ok = true;
  std::string detail;
};

AuditResult audit_bijection(const DisorderedBlock& block);
AuditResult audit_bijection(const HostPermutation& h);
AuditResult audit_gap_filling(const DisorderedBlock& block);
AuditResult audit_levels(const DisorderedBlock& block);
AuditResult audit_concatenation(const HostPermutation& h);

/// |IF| >= (min time of IF + s^3)*s here and in every nested block.
bool largeness_ok(const DisorderedBlock& block, std::uint64_t s);

}  // namespace stochlab
