#pragma once

#include <stdexcept>
#include <string>

namespace cbpenta {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller misuse: dimension mismatch, invalid parameters, guard exceeded.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Carries the 1-based line number where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be inverted is singular to working precision.
class SingularError : public Error {
public:
    using Error::Error;
};

/// A stage inverse of the banded factorization failed. stage() is the
/// 1-based block row k at which the pivot collapsed; 0 when the failure
/// happened outside the factorization loop.
class SingularBlockError : public SingularError {
public:
    explicit SingularBlockError(const std::string& what, int stage = 0)
        : SingularError(what), stage_(stage) {}

    int stage() const noexcept { return stage_; }

private:
    int stage_;
};

/// The 2m-by-2m coupling system is singular. Signals a bad parameter
/// choice or a genuinely singular system.
class SingularAuxiliaryError : public SingularError {
public:
    using SingularError::SingularError;
};

}  // namespace cbpenta
