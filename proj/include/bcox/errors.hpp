#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcox {

/// Caller violated an operation's precondition (mismatched registries,
/// unsolved parameters, illegal Markov move, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input could not be parsed; `position` is the 0-based token index.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (token " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Division by zero, an identically vanishing denominator, a pole, or a
/// non-invertible algebra element.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input is well formed but outside what the implementation handles
/// (strand bounds, state-space bounds, non-grid lattices).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear closure of a presentation did not stabilize within its bound.
class NonConfluenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter specialization makes a defining relation divide by zero.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear system over the coefficient field has no solution.
class InconsistentSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcox
