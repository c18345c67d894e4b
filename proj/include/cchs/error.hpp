#pragma once

#include <stdexcept>
#include <string>

namespace cchs {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad scale, degenerate color, out-of-range noise level.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed file, or a failed write.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite value it cannot mask.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cchs
