#pragma once

#include <stdexcept>
#include <string>

namespace arnagg {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes disagree. Always a caller bug.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Input violates a documented invariant (row sums, negative entries, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Uniformisation rate below the largest exit rate of the generator.
class InvalidRate : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// State-space enumeration exceeded its configured hard limit.
class StateSpaceOverflow : public Error {
public:
    using Error::Error;
};

/// The eigensolver did not converge within its iteration budget.
class SolverFailure : public Error {
public:
    using Error::Error;
};

/// Malformed or unreadable file.
class IoError : public Error {
public:
    using Error::Error;
};

namespace detail {
[[noreturn]] inline void throw_dimension(const std::string& what, std::size_t expected, std::size_t got) {
    throw DimensionMismatch(what + ": expected " + std::to_string(expected) + ", got " + std::to_string(got));
}

inline void check_dimension(const char* what, std::size_t expected, std::size_t got) {
    if (expected != got) throw_dimension(what, expected, got);
}
} // namespace detail

} // namespace arnagg
