#pragma once

#include <stdexcept>
#include <string>

namespace iree {

// Base for all domain errors so callers can catch the library as a whole.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Covariance matrix fails symmetry or positive definiteness.
struct InvalidCovarianceError : Error {
    using Error::Error;
};

// A field (or all sub-fields) has zero total mass.
struct EmptyFieldError : Error {
    using Error::Error;
};

// Traffic mixture carries no mass inside the region.
struct EmptyTrafficError : EmptyFieldError {
    using EmptyFieldError::EmptyFieldError;
};

// Two fields that must share a grid do not.
struct GridMismatchError : Error {
    using Error::Error;
};

// Mixture split with both totals zero.
struct DegenerateMixtureError : Error {
    using Error::Error;
};

// Scenario totals make a metric undefined (zero power, capacity, or demand).
struct DegenerateScenarioError : Error {
    using Error::Error;
};

// Config file problems: parse failures, unknown keys, invariant violations.
struct ConfigError : Error {
    using Error::Error;
};

// Unwritable output path or failed stream.
struct IoError : Error {
    using Error::Error;
};

} // namespace iree
