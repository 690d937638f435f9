#pragma once

#include <stdexcept>
#include <string>

namespace avgent {

/// Base of every error the core raises. The C API maps each subclass onto a status code.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad dimension text, unknown quantity, out-of-range index.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A mathematical precondition does not hold (e.g. n_A n_B > n_C for the exact tripartite formula).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A materialization or eigensolver cap would be exceeded.
class CapExceeded : public Error {
  public:
    using Error::Error;
};

/// A guaranteed numeric bound failed to hold; signals broken arithmetic, never repaired silently.
class PrecisionFailure : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace avgent
