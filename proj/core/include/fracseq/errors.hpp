#pragma once

#include <stdexcept>
#include <string>

namespace fracseq {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A Gamma-function argument sits on a pole where the closed form is undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

// A rule-generated matrix source failed to produce a row.
class SourceError : public Error {
 public:
  using Error::Error;
};

// Refusal to run an enumeration whose cost exceeds the configured guard.
class CostGuardRefusal : public Error {
 public:
  using Error::Error;
};

}  // namespace fracseq
