#pragma once

#include <stdexcept>
#include <string>

namespace abvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression source; carries the byte offset of the failure.
class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset)
        : Error(message + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Domain error during expression evaluation (sqrt/log of a negative,
/// division by zero, 0^negative, ...); carries the offending subexpression.
class EvalError : public Error {
public:
    EvalError(const std::string& message, std::string subexpression)
        : Error(message + " in subexpression `" + subexpression + "`"),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// Invalid input: violated precondition, bad problem file, out-of-range argument.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: exhausted bracket, non-finite sample, iteration blowup.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace abvp
