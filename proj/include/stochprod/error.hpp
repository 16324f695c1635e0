#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stochprod {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A dimension is zero or two operands disagree on dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An index or node lies outside its admissible range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// A precondition on the structure of an argument does not hold
/// (e.g. a node set that is not a strongly connected component).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Raw matrix data failed validation. `row` is the offending row when known.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::size_t row)
        : Error(what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NegativityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class StochasticityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A certificate was requested for a sequence whose hypotheses fail.
class RefusedCertification : public Error {
public:
    using Error::Error;
};

/// Malformed sequence file.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace stochprod
