#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stochlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query past a finite prefix or an index outside a domain.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// Two operands that must have equal length do not.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic overflow or a construction exceeding the configured capacity.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied rule broke its contract (monotonicity, orderliness, ...).
/// `step()` names the offending evaluation index.
class ContractViolation : public Error {
 public:
  ContractViolation(const std::string& what, std::uint64_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  explicit ContractViolation(const std::string& what) : Error(what) {}

  std::uint64_t step() const { return step_; }

 private:
  std::uint64_t step_ = 0;
};

/// A strategy was asked to work inside a block nested too shallowly.
class NestingError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// An evaluation ran past its step budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search refused because the search space exceeds its cap.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Something the construction guarantees turned out false.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A permutation fragment does not reach far enough to answer a question.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `position()` is a byte offset or a 1-based line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::uint64_t position)
      : Error(what), position_(position) {}

  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t position_;
};

}  // namespace stochlab
