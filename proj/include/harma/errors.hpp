#pragma once

#include <stdexcept>
#include <string>

namespace harma {

/// Thrown when an operation requires a stationary/invertible model and the
/// parameter point or the ARMA roots fail the admissibility checks.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a numerical routine cannot meet its accuracy contract
/// (quadrature non-convergence, recurrence/oracle mismatch).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace harma
