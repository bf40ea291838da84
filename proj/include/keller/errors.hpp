#pragma once

#include <stdexcept>
#include <string>

namespace keller {

/// Shape mismatch between operands: arity, index or length.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside an operation's mathematical domain (zero polynomial, n = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The input contradicts a stated hypothesis, e.g. a "Keller" map whose
/// shifted components share a factor.
class InputInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result that would contradict a theorem the library relies on. Never
/// silently ignored.
class Anomaly : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check failed. Indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace keller
