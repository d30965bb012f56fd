#pragma once

#include <stdexcept>
#include <string>

namespace maslov {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-range input (bad config, violated precondition).
class InputError : public Error {
public:
    using Error::Error;
};

// A numerical step could not be completed (integrator failure, singular solve).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Sampling too coarse to resolve the quantity being tracked.
class UnderResolvedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Query parameter sits on (or within tolerance of) a spectral point.
class ResonanceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Two independent routes disagreed.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace maslov
