#pragma once

#include <stdexcept>
#include <string>

namespace dyndet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A map parameter lies outside the family's admissible interval.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The coefficient-norm bound does not certify uniform expansion.
class ExpansionError : public Error {
public:
  using Error::Error;
};

/// A computed object violates one of its structural invariants.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance within its budget.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Caller-supplied data violates a precondition.
class InputError : public Error {
public:
  using Error::Error;
};

/// d_z vanishes (numerically) at the evaluation point.
class DegenerateZeroError : public Error {
public:
  using Error::Error;
};

} // namespace dyndet
