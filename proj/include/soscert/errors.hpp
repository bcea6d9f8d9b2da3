#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace soscert {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position` is a 0-based offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands built over different variable lists.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Evaluation point or substitution does not cover every variable.
class MissingValue : public Error {
 public:
  using Error::Error;
};

/// A rational substitution left a denominator behind after clearing.
class ResidualDenominator : public Error {
 public:
  using Error::Error;
};

/// The polynomial cannot be a sum of squares for structural reasons
/// (odd degree, empty half Newton polytope).
class NotSosCandidate : public Error {
 public:
  using Error::Error;
};

/// A support monomial of the target is not a product of two basis monomials.
class InfeasibleBasis : public Error {
 public:
  using Error::Error;
};

/// The polynomial is not invariant under the symmetry it was blocked with,
/// or a permutation is not an involution.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Numerical solve did not reach a usable point.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Rounding was too coarse to keep the projected Gram matrix PSD.
class RetryWithLargerDenominator : public Error {
 public:
  using Error::Error;
};

/// Malformed certificate or report file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace soscert
