#pragma once

#include <stdexcept>
#include <string>

namespace depletion {

// Invalid arguments: dimension mismatch, overlapping bodies, negative radii.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input that is valid but lies on a singular branch of an algorithm (e.g. a
// linear solve with collinear centers). Callers are expected to route to the
// degenerate code path instead.
class DegenerateInputError : public InputError {
 public:
  using InputError::InputError;
};

// Iterative procedure failed to bracket or converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation not supported for a given shape or dimension.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace depletion
