#pragma once

#include <stdexcept>
#include <string>

namespace semigrowth {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the sampled domain of a function or model.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Level outside the attained range of a monotone function.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis could not be confirmed on the sampled window.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Resolvent evaluated at a point of the spectrum.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Spectral model unsuitable for the requested envelope.
class ModelError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace semigrowth
