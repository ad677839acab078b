#pragma once

#include <stdexcept>
#include <string>

namespace mlev {

// Bad user input: configs, CSV files, parameter ranges. CLI maps this to exit 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical machinery failed (quadrature budget, non-convergent fit, broken
// bracketing). CLI maps this to exit 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mlev
