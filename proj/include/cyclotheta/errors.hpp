#pragma once

#include <stdexcept>
#include <string>

namespace cyclotheta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied arguments (CLI exit code 2).
struct ParameterError : Error {
    using Error::Error;
};

// The requested theorem/operation does not apply to these parameters.
struct UnsupportedParameters : Error {
    using Error::Error;
};

// Residue element is not a unit in the residue ring.
struct NonInvertibleError : Error {
    using Error::Error;
};

// An exact identity that must hold by construction failed; signals a
// convention or basis bug, never a user error.
struct ConsistencyError : Error {
    using Error::Error;
};

// A certified bound could not be established at the working precision.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Quotient denominator not separated from zero: either z is near a zero of
// the denominator theta or the precision is too low to decide.
struct PoleOrPrecision : PrecisionExhausted {
    using PrecisionExhausted::PrecisionExhausted;
};

// Orbit points not separated beyond certified error at the precision cap.
struct InconclusiveAtPrecision : Error {
    using Error::Error;
};

} // namespace cyclotheta
