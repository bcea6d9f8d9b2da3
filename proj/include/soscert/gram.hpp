#pragma once

// Gram-matrix formulation p = u^T Q u over a monomial vector u, and the
// block form used after symmetry reduction, where each block coordinate is a
// rational combination of basis monomials.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "soscert/polynomial.hpp"
#include "soscert/rational_matrix.hpp"

namespace soscert {

struct MonomialBasis {
  VariableContext context;
  std::vector<Exponent> monomials;

  std::size_t size() const noexcept { return monomials.size(); }
  /// Position of `m`, if present.
  std::optional<std::size_t> index_of(const Exponent& m) const;
  Polynomial polynomial(std::size_t i) const;
};

struct GramEntry {
  std::size_t i, j;  ///< i <= j
  Rational weight;   ///< 1 on the diagonal, 2 off it
};

struct GramConstraint {
  Exponent monomial;
  std::vector<GramEntry> entries;
  Rational rhs;
};

struct GramProblem {
  Polynomial target;
  MonomialBasis basis;
  std::vector<GramConstraint> constraints;  ///< descending monomial order
};

/// Exact test: is `point` in the convex hull of `vertices`?
bool in_convex_hull(const Exponent& point, const std::vector<Exponent>& vertices);

/// Half-Newton-polytope candidates pruned to the diagonal-consistency
/// fixpoint, in descending graded-lex order. Throws NotSosCandidate for odd
/// total degree or when nothing survives for a nonzero polynomial.
MonomialBasis candidate_basis(const Polynomial& p);

/// Every monomial of total degree <= half_degree.
MonomialBasis full_basis(const VariableContext& ctx, unsigned half_degree);

/// One constraint per distinct product basis[i] * basis[j]. Throws
/// InfeasibleBasis when a support monomial of p is not such a product.
GramProblem build_gram_problem(const Polynomial& p, const MonomialBasis& basis);

/// u^T Q u
Polynomial gram_expand(const MonomialBasis& basis, const RationalMatrix& q);

void write_gram_problem(std::ostream& out, const GramProblem& problem);
GramProblem read_gram_problem(std::istream& in);
std::string gram_problem_to_string(const GramProblem& problem);

// ---- block form ------------------------------------------------------------

/// Sparse rational combination of basis monomials, sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// A diagonal block X of the Gram matrix. Copy c contributes
/// v_c^T X v_c with v_c[k] = sum_p copies[c][k][p] u_p, so the full Gram
/// matrix is sum_c T_c^T X T_c.
struct GramBlock {
  std::string label;
  std::vector<std::vector<SparseVector>> copies;

  std::size_t dimension() const { return copies.empty() ? 0 : copies.front().size(); }
  std::size_t multiplicity() const { return copies.size(); }
};

struct BlockEntry {
  std::size_t block, k, l;  ///< k <= l
  Rational coefficient;
};

struct BlockConstraint {
  Exponent monomial;
  std::vector<BlockEntry> entries;
  Rational rhs;
};

struct BlockGramSystem {
  Polynomial target;
  MonomialBasis basis;
  std::vector<GramBlock> blocks;
  std::vector<BlockConstraint> constraints;  ///< descending monomial order

  std::size_t variable_count() const;  ///< sum of d(d+1)/2
  /// Column index of entry (k,l), k <= l, of `block` in a flat ordering.
  std::size_t column(std::size_t block, std::size_t k, std::size_t l) const;
};

/// Identity rows: one block holding the whole basis.
GramBlock identity_block(std::size_t n);

/// Expands every block's quadratic form into coefficient constraints.
BlockGramSystem assemble_blocks(const Polynomial& target, const MonomialBasis& basis,
                                std::vector<GramBlock> blocks);

/// Block coordinate k of `block`, copy c, as a polynomial.
Polynomial block_coordinate(const BlockGramSystem& sys, std::size_t block, std::size_t copy,
                            std::size_t k);

}  // namespace soscert
