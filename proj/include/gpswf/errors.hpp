#pragma once

#include <stdexcept>
#include <string>

namespace gpswf {

// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument inside the domain but outside the supported envelope.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Iteration failed to converge or a consistency check tripped.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Expansion could not be truncated to the required tail size.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double worst_tail)
      : std::runtime_error(what), worst_tail_(worst_tail) {}
  double worst_tail() const noexcept { return worst_tail_; }

 private:
  double worst_tail_;
};

// Caller violated a sizing requirement (too few nodes, index out of range).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gpswf
