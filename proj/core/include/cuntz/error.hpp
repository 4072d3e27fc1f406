#pragma once

#include <stdexcept>
#include <string>

namespace cuntz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (sqrt of a non-positive
// rational, reciprocal of a multi-term radical, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Input data violates a structural invariant (stochasticity, normalization,
// alphabet mismatch, overlapping cylinders, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A step function was asked for information below its resolution.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// nu(C(w)) > 0 while mu(C(w)) = 0.
class NotAbsolutelyContinuous : public Error {
 public:
  NotAbsolutelyContinuous(const std::string& witness)
      : Error("not absolutely continuous: witness cylinder C(" + witness + ")"),
        witness_(witness) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Two independent computations of the same quantity disagree.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON or command-line input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cuntz
