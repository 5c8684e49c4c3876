#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace teich {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CLI exit code 2).
struct InputError : Error {
    using Error::Error;
};

// Mixed or mismatched value representations (e.g. torus line vs component sum).
struct RepresentationError : InputError {
    using InputError::InputError;
};

// Iteration budget exhausted without reaching tolerance (CLI exit code 3).
struct NonconvergenceError : Error {
    explicit NonconvergenceError(const std::string& what, std::vector<double> residuals = {})
        : Error(what), residual_history(std::move(residuals)) {}
    std::vector<double> residual_history;
};

} // namespace teich
