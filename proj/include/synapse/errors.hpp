#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace synapse {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a structural invariant. The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonFinite : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DuplicateModelName : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class AlignmentMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A quantile vector decreases between `index` and `index + 1`.
class NonMonotoneQuantiles : public ValidationError {
public:
    NonMonotoneQuantiles(std::size_t index, std::optional<std::string> model = std::nullopt,
                         std::optional<std::size_t> timestep = std::nullopt);

    std::size_t index() const noexcept { return index_; }
    const std::optional<std::string>& model() const noexcept { return model_; }
    const std::optional<std::size_t>& timestep() const noexcept { return timestep_; }

private:
    std::size_t index_;
    std::optional<std::string> model_;
    std::optional<std::size_t> timestep_;
};

class ParseError : public ValidationError {
public:
    ParseError(std::string file, std::size_t line, const std::string& what);

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class SchemaVersionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Runtime failures of individual operations (exit code 3 at the CLI).

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

class SeriesTooShort : public Error {
public:
    using Error::Error;
};

class DegenerateVariance : public Error {
public:
    using Error::Error;
};

class EmptySampleSet : public Error {
public:
    using Error::Error;
};

class EmptyWindow : public Error {
public:
    using Error::Error;
};

class AllZeroAllocation : public Error {
public:
    using Error::Error;
};

class MissingActuals : public Error {
public:
    using Error::Error;
};

class EmptyGroup : public Error {
public:
    using Error::Error;
};

class Misalignment : public Error {
public:
    using Error::Error;
};

class InsufficientModels : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace synapse
