#pragma once

#include <stdexcept>
#include <string>

namespace mpsgs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad shape, out-of-range
/// parameter, non-finite value, unsupported case).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Rank decision fell in the ambiguous band between rank_tol and
/// 10*rank_tol; the input is refused rather than guessed at.
class DegenerateInputError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mpsgs
