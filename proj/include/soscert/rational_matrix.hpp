#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "soscert/rational.hpp"

namespace soscert {

/// Dense symmetric matrix over the rationals. Writes go to both triangles.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}
  /// Throws Error unless `rows` is square and symmetric.
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t dimension() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& v);
  /// Adds v at (i,j) and, off the diagonal, at (j,i).
  void add(std::size_t i, std::size_t j, const Rational& v);

  /// x^T A x
  Rational quadratic_form(const std::vector<Rational>& x) const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

std::string to_string(const RationalMatrix& m);

}  // namespace soscert
