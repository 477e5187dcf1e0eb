#pragma once

#include <stdexcept>
#include <string>

namespace meanrev {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameter values (alpha <= 0, |rho| > 1, negative sigma, ...).
struct DomainError : Error {
    using Error::Error;
};

// Input too short for the requested operation.
struct InsufficientDataError : Error {
    using Error::Error;
};

// Malformed input file; carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line_number)
        : Error(msg + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
    // File-level failure (unreadable file, missing header): line = 0.
    explicit ParseError(const std::string& msg) : Error(msg), line(0) {}
    std::size_t line;
};

// Structurally valid input violating a semantic contract (duplicate dates,
// non-positive prices, inconsistent lengths in one container, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Two series that must share a length or time base do not.
struct AlignmentError : Error {
    using Error::Error;
};

// Kalman recursion failure (singular innovation covariance).
struct FilterError : Error {
    using Error::Error;
};

// Closed-form moment evaluated at a pole of its prefactor.
struct SingularityError : Error {
    using Error::Error;
};

}  // namespace meanrev
