#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tspsplit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's mathematical domain (zero-length tour,
/// coincident instance, violated precondition).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Instance exceeds an exact oracle's size budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A construction that must succeed did not; indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

/// An exhaustive check found a counterexample.
class VerificationError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; line() is 1-based, or 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace tspsplit
