#pragma once

#include <stdexcept>
#include <string>

namespace et14 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation at a pole (lam = 0 with a negative lam power).
struct DivisionByZeroError : Error {
    using Error::Error;
};

// Evaluation outside the domain (log terms with lam <= 0), or a request for
// an exact value that is not rational.
struct DomainError : Error {
    using Error::Error;
};

// Symmetrized-delta contraction over an odd number of index slots.
struct OddRankError : Error {
    using Error::Error;
};

// Violation of the parity rule for isotropic polynomial keys.
struct ParityError : Error {
    using Error::Error;
};

// The psi family does not reach the depth required by the expansion order.
struct FamilyTooShallowError : Error {
    using Error::Error;
};

// A required seed function is missing from the free input.
struct MissingSeedError : Error {
    using Error::Error;
};

// A closure coefficient that must be inverted vanishes at the given state.
struct SingularStateError : Error {
    using Error::Error;
};

// A material state-function constraint fails; message names the check id.
struct ConstraintViolationError : Error {
    using Error::Error;
};

// The two closure routes disagree; message names the first bad quantity.
struct BridgeMismatchError : Error {
    using Error::Error;
};

// Bad CLI configuration or unparseable input.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace et14
