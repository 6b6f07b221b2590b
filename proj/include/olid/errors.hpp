#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace olid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input bytes are not well-formed UTF-8. `line()` is 1-based, or 0 when
/// the input was not read from a line-oriented source.
class InvalidEncoding : public Error {
public:
    explicit InvalidEncoding(const std::string& what, std::size_t line = 0)
        : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Model file errors.

class FormatError : public Error {
public:
    using Error::Error;
};

class VersionMismatch : public FormatError {
public:
    using FormatError::FormatError;
};

class ChecksumMismatch : public FormatError {
public:
    using FormatError::FormatError;
};

class TruncatedFile : public FormatError {
public:
    using FormatError::FormatError;
};

}  // namespace olid
