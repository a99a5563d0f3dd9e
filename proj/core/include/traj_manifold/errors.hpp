#pragma once

#include <stdexcept>
#include <string>

namespace traj_manifold {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Out-of-range or inconsistent parameters (k, d, stride, thresholds, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed or invalid input data (bad CSV, broken dataset invariants, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerically degenerate situation (all-zero spectrum, undefined correlation, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace traj_manifold
