#pragma once

#include <stdexcept>
#include <string>

namespace jordanmask {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or truncated image file.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// Unsupported pixel layout or file type.
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

/// Coordinate outside of an image domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two images that must share a size do not.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Input on which a method has no meaningful answer (e.g. k-means on a single intensity).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// File system failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace jordanmask
