// Error taxonomy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace betadyn {

// Invalid mathematical input (beta <= 1, x outside [0,1), malformed ranges, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A digit or comparison could not be certified within the precision ladder.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A decision needs more materialized digits of the expansion of 1.
struct DepthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative estimate failed to settle within its budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal structural invariant failed; indicates a bug, not bad input.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace betadyn
