#pragma once

#include <stdexcept>
#include <string>

namespace ansec {

// Invalid argument values: out-of-domain inputs, broken type invariants.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A power split that cannot support the target rate (C_B <= R_S), i.e. the
// evaluation point lies outside the feasible region of the problem.
struct FeasibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root bracketing failed: no sign change on the supplied interval.
struct BracketError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed configuration file or inconsistent sweep specification.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ansec
