#pragma once
#include <stdexcept>

namespace nls {

/// Precondition / hypothesis violations: bad parameters, out-of-box exponents,
/// rejected inputs. The CLI maps these to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Runtime failures (non-contraction, blow-up, I/O). CLI exit code 3.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nls
