#pragma once

#include <stdexcept>

namespace qdiss {

// Caller violated a documented precondition (bad dimensions, unknown label,
// unnormalized input, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant failed at run time (state validation, singular
// eigenbasis, detection never flipping, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qdiss
