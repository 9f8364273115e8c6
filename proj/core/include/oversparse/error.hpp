#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oversparse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together, or are not dyadic for the requested depth.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A value outside its documented domain (bad ratio, wrong mask domain, unknown label...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or an iteration that cannot continue.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated files. `offset` is the byte position where parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// File system failures: missing files, unwritable directories.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace oversparse
