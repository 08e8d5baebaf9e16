#pragma once

#include <stdexcept>
#include <string>

namespace poscurves {

// Exit-code contract: 2 = bad input or unmet precondition, 3 = an iterative
// solver failed to converge, 4 = a certified invariant failed to verify.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TheoremViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace poscurves
