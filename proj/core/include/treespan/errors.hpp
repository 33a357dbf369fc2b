#pragma once

#include <stdexcept>
#include <string>

namespace treespan {

/// A witness was requested for an input on the wrong side of the decision
/// (positive witness on a rejected input, or vice versa).
class InfeasibleWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive oracle was asked to run on an instance beyond its size guard.
class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An internal algebraic or structural invariant failed. Carries a diagnostic
/// describing the worst offending entry.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file or JSON document did not match the expected schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace treespan
