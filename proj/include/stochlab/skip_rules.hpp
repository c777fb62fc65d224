#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stochlab/bit_prefix.hpp"
#include "stochlab/rational.hpp"
#include "stochlab/types.hpp"

namespace stochlab {

struct SkipEntry {
  Door door;
  bool content;

  bool operator==(const SkipEntry&) const = default;
};

/// Observed (door, content) history with strictly increasing doors.
class SkipSequence {
 public:
  /// Throws ContractViolation if `e.door` does not exceed the last door.
  void push(SkipEntry e);

  const std::vector<SkipEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const SkipEntry& back() const { return entries_.back(); }

  bool operator==(const SkipSequence&) const = default;

 private:
  std::vector<SkipEntry> entries_;
};

/// Incremental evaluation of a rule: propose() gives the next door for the
/// history observed so far.
class SkipSession {
 public:
  virtual ~SkipSession() = default;
  virtual Door propose() = 0;
  virtual void observe(SkipEntry e) = 0;
};

/// A total map from skip sequences to doors, given by a session factory.
class SkipRule {
 public:
  using Factory = std::function<std::unique_ptr<SkipSession>()>;

  SkipRule(std::string name, Factory factory);

  const std::string& name() const { return name_; }
  std::unique_ptr<SkipSession> session() const { return factory_(); }
  /// next(sigma), by replaying sigma through a fresh session.
  Door next(const SkipSequence& sigma) const;

 private:
  std::string name_;
  Factory factory_;
};

/// A rule whose next door depends only on the last entry (or its absence).
SkipRule last_entry_rule(std::string name,
                         std::function<Door(const std::optional<SkipEntry>&)> step);

SkipRule next_door_rule();
/// Opens 0, then last + k.
SkipRule stride_rule(std::uint64_t k);
SkipRule block_scanner();
SkipRule even_odd_rule();
/// g simulates f on the doubled history and selects k whenever f selects 2k
/// or 2k+1, skipping 2k+1 right after 2k.
SkipRule halve_rule(const SkipRule& f);

struct SkipResult {
  SkipSequence trace;
  BitPrefix selected;
};

/// Runs f against A until the next door is >= A.size() or max_steps doors
/// were opened.
SkipResult apply_skip_rule(const SkipRule& f, const BitPrefix& a, std::uint64_t max_steps);

struct OrderedBlockLayout {
  std::uint64_t n;
  Door start;
  Door end;
  std::uint64_t sub_block_len;
  std::uint64_t sub_block_count;

  Door sub_block_begin(std::uint64_t i) const { return start + i * sub_block_len; }
  Door sub_block_end(std::uint64_t i) const { return start + (i + 1) * sub_block_len; }
};

inline constexpr std::uint64_t kMaxOrderedBlock = 30;

/// Block n = [(4^n - 1)/3, (4^{n+1} - 1)/3), cut into 2^n sub-blocks of 2^n.
OrderedBlockLayout ordered_block(std::uint64_t n);

struct OrderedPosition {
  std::uint64_t n;
  std::uint64_t sub_block;
  std::uint64_t offset;
};

OrderedPosition locate_ordered(Door d);

struct HalvingComparison {
  std::uint64_t f_steps = 0;
  std::uint64_t g_steps = 0;
  Rational max_rho_f;
  Rational max_rho_g;
  bool traces_consistent = false;
  /// rho_{m'}(g) >= rho_m(f)/2 for every m, with m' the number of distinct
  /// halves among f's first m doors.
  bool pointwise_ok = false;
  std::optional<std::uint64_t> first_violation;
  bool holds() const { return traces_consistent && pointwise_ok && max_rho_g * Rational(2) >= max_rho_f; }
};

HalvingComparison compare_halving(const SkipRule& f, const BitPrefix& a, std::uint64_t max_steps);

}  // namespace stochlab
