#pragma once

#include <stdexcept>
#include <string>

namespace spreadpc {

// Base of all library errors. The CLI maps each subtype to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on an argument (d = 0, L = 0, unsupported norm, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Enumeration or dense-convolution work exceeded its configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// File could not be opened or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure could not produce a result (e.g. no root bracket).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace spreadpc
