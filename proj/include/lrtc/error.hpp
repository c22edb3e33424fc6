#pragma once

#include <stdexcept>
#include <string>

namespace lrtc {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of two operands disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Unfolding mode outside {1, 2, 3}.
class ModeError : public Error {
public:
    using Error::Error;
};

/// Invalid solver, scenario or grid parameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Truncation level r is not below min{m, n}.
class TruncationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Weights passed to the weighted shrinkage are not nonnegative and nondecreasing.
class OrderConstraintError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Non-finite numbers where finite values are required.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// The problem or the evaluation set is empty (no observed entries, zero norm, empty holdout).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. The message names the offending line/column.
class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lrtc
