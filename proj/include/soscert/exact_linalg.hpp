#pragma once

// Exact rational linear algebra for constraint preprocessing, projection
// and facial reduction. Rows are sparse (column, value) lists sorted by
// column.

#include <cstddef>
#include <optional>
#include <vector>

#include "soscert/gram.hpp"
#include "soscert/rational_matrix.hpp"

namespace soscert {

struct RowSelection {
  std::vector<std::size_t> independent;  ///< indices of a maximal independent subset, in input order
  /// First row whose equation contradicts the earlier ones, if any.
  std::optional<std::size_t> inconsistent;
};

/// Gaussian elimination over Q; a row reducing to 0 = c with c != 0 marks
/// the system inconsistent.
RowSelection select_independent_rows(const std::vector<SparseVector>& rows,
                                     const std::vector<Rational>& rhs);

/// Solves N x = r for symmetric positive definite N given by sparse rows.
/// Diagonal pivots, chosen by fewest remaining nonzeros.
std::vector<Rational> solve_spd(std::vector<SparseVector> rows, const std::vector<Rational>& rhs);

/// Basis of {v : R v = 0} for dense rows R with `columns` entries.
std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& rows,
                                             std::size_t columns);

enum class PivotRule { kLargestDiagonal, kNatural };

struct LdltResult {
  bool psd = false;
  /// Row k of the unit lower factor, in original coordinates: the k-th
  /// square is pivots[k] * (sum_i factor[k][i] e_i)^2.
  std::vector<std::vector<Rational>> factor;
  std::vector<Rational> pivots;
  /// When not PSD: v with v^T A v < 0.
  std::vector<Rational> witness;
};

/// A = sum_k pivots[k] (factor[k] . x)^2 when PSD; zero pivots are omitted.
LdltResult ldlt_exact(const RationalMatrix& a, PivotRule rule = PivotRule::kLargestDiagonal);

}  // namespace soscert
