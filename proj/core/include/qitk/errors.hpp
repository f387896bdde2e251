#pragma once

#include <stdexcept>
#include <string>

namespace qitk {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes, lengths or particle indices that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An object fails one of its type invariants (Hermiticity, trace, positivity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Zero vectors and similar inputs that cannot be normalized.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Unknown name in a lookup table (famous states, gates, ...).
class LookupError : public Error {
 public:
  using Error::Error;
};

class NotSpannableError : public Error {
 public:
  using Error::Error;
};

class NotImplementedError : public Error {
 public:
  using Error::Error;
};

}  // namespace qitk
