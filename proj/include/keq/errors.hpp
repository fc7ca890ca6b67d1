#pragma once

#include <stdexcept>

namespace keq {

// A solver was called outside its domain of validity (e.g. the baseline
// solver without abundant machines). The message names the right fallback.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Analytic gradients are only defined at interior, non-kink points.
struct NondifferentiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range run configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace keq
