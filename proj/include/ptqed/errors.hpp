// Error taxonomy: validation errors (bad inputs/config, CLI exit 1) vs
// numerical errors (solver failures discovered mid-computation, CLI exit 2).
#pragma once

#include <stdexcept>
#include <string>

namespace ptqed {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition / configuration problems, detectable before heavy work starts.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Failures of the numerics themselves: non-convergence, invariant breach,
// singular systems, truncation breakdown.
struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace ptqed
