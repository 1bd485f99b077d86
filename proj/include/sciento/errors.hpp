#pragma once

#include <stdexcept>
#include <string>

namespace sciento {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Unusable input: malformed files, broken fixture invariants, bad records.
/// The CLI maps these to exit code 1.
class InputError : public Error {
public:
    using Error::Error;
};

/// A metric could not be computed from otherwise valid input (degenerate
/// regression, divergent series, empty population). CLI exit code 2.
class ComputeError : public Error {
public:
    using Error::Error;
};

class EmptyNameError : public InputError {
public:
    using InputError::InputError;
};

class MissingColumnError : public InputError {
public:
    using InputError::InputError;
};

class SchemaError : public InputError {
public:
    using InputError::InputError;
};

class ConsistencyError : public InputError {
public:
    using InputError::InputError;
};

class InvalidCountsError : public InputError {
public:
    using InputError::InputError;
};

class DivisionByZeroError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class EmptyClassError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class DegenerateScalingError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class DegenerateFitError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class DivergentSeriesError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class MismatchedSupportError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class NonPositiveOutputError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class UndefinedDoublingTimeError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

class EmptyPeriodError : public ComputeError {
public:
    using ComputeError::ComputeError;
};

}  // namespace sciento
