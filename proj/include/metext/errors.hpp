#pragma once

#include <stdexcept>
#include <string>

namespace metext {

// Malformed input: bad file, bad element syntax, unknown label. CLI exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-formed request that cannot be computed: enumeration caps, unbalanced
// masses, empty search space. CLI exit code 2.
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceeded : ComputationError {
  using ComputationError::ComputationError;
};

struct UnbalancedMass : ComputationError {
  using ComputationError::ComputationError;
};

}  // namespace metext
