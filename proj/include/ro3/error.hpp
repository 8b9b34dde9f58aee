#pragma once

#include <stdexcept>
#include <string>

namespace ro3 {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
  using Error::Error;
};

/// Malformed raster file, container or codec bitstream.
class FormatError : public Error {
public:
  using Error::Error;
};

/// A precondition on an argument was violated (bad sizes, negative std, ...).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Numeric domain violation, e.g. a Rule-of-Three denominator of exactly zero.
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace ro3
