#pragma once

#include <stdexcept>
#include <string>

namespace coxpack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph document or compact text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (wrong type class, bad range, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The bilinear form is singular, so fundamental weights are undefined.
class SingularFormError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// An orbit enumeration exceeded the configured record cap.
class OrbitCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A numerical result contradicts a known theorem (e.g. a weight norm above 1
/// on a level-2 system).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxpack
