#pragma once

#include <stdexcept>
#include <string>

namespace harmlens {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical hypothesis of the requested operation is violated
// (degree too low, coincident point masses, malformed construction).
struct HypothesisError : Error {
    using Error::Error;
};

struct DegreeTooLowError : HypothesisError {
    using HypothesisError::HypothesisError;
};

struct CoincidentMassesError : HypothesisError {
    using HypothesisError::HypothesisError;
};

struct InvalidInputError : HypothesisError {
    using HypothesisError::HypothesisError;
};

// Numerical procedure could not certify its result.
struct NumericalError : Error {
    using Error::Error;
};

struct NonConvergentError : NumericalError {
    using NumericalError::NumericalError;
};

struct ContourTooCloseError : NumericalError {
    using NumericalError::NumericalError;
};

struct ResolutionTooCoarseError : NumericalError {
    using NumericalError::NumericalError;
};

struct PoleEvaluationError : NumericalError {
    using NumericalError::NumericalError;
};

// Requested check has no meaning for the given inputs (e.g. parity with shear).
struct NotApplicableError : Error {
    using Error::Error;
};

// Malformed serialized input (wrong JSON shape, unreadable file). Distinct
// from HypothesisError: the input never described a mathematical object.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace harmlens
