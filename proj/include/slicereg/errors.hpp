#pragma once

#include <stdexcept>
#include <string>

namespace slicereg {

// Error taxonomy used across the library.  The CLI maps these onto exit
// codes: configuration/usage/invalid input -> 2, numerical failure -> 3.

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid build-time or run configuration (e.g. generator count out of range).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// API misuse: mismatched contexts, violated operation preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A point or axis fails the slice-geometry invariants.
class InvalidPointError : public Error {
 public:
  using Error::Error;
};

// Element has no two-sided inverse (zero divisor or zero).
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

// Evaluation hit the zero set of a symmetrization.
class ZeroSetError : public Error {
 public:
  using Error::Error;
};

// Input violates a check's mathematical premise.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed to produce a trustworthy answer
// (e.g. winding integral far from an integer).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicereg
