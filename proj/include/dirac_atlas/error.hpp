#pragma once

#include <stdexcept>
#include <string>

namespace dirac_atlas {

// Bad input: malformed data, failed preconditions, violated invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical decision (rank, idempotency, convergence) could not be made
// with the configured tolerances.
class NumericalAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dirac_atlas
