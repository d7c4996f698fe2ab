#pragma once

#include <stdexcept>
#include <string>

namespace qkt {

// Base for every failure raised by the library. Callers that only need a
// diagnostic can catch this; the subclasses exist for tests and for the CLI
// to tell numerical breakdowns apart from bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotAFixedPoint : public Error {
 public:
  using Error::Error;
};

class ResidualTooLarge : public Error {
 public:
  using Error::Error;
};

class ImaginaryResidue : public Error {
 public:
  using Error::Error;
};

class NTooSmall : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qkt
