#pragma once

// Sign-flip symmetries (a parity subgroup of (Z/2)^n) and one involutive
// variable swap. Invariant Gram matrices split into blocks: one per parity
// class, each class split again into swap-symmetric and antisymmetric parts,
// and classes exchanged by the swap merged into one block of multiplicity 2.

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soscert/gram.hpp"

namespace soscert {

/// Bit v of a parity mask is the parity of variable v.
using ParityMask = std::uint32_t;

ParityMask parity_of(const Exponent& e);

struct SignSymmetryGroup {
  std::size_t variables = 0;
  /// Reduced echelon basis (over GF(2)) of the support parities. A flip
  /// pattern s fixes p iff s has even overlap with every check.
  std::vector<ParityMask> checks;
  /// Basis of the flip patterns fixing p.
  std::vector<ParityMask> generators;

  std::size_t order() const { return std::size_t{1} << (variables - checks.size()); }
  bool contains(ParityMask flips) const;
  /// Canonical representative of parity(m) modulo the check span; two
  /// monomials may share a nonzero invariant Gram entry iff these agree.
  ParityMask class_of(const Exponent& m) const;
};

SignSymmetryGroup detect_sign_symmetries(const Polynomial& p);

/// True iff p(x_perm) == p. Throws SymmetryError unless perm is an
/// involution on the variable indices.
bool detect_swap(const Polynomial& p, std::span<const std::size_t> perm);

struct SymmetryBlocking {
  std::vector<GramBlock> blocks;
  std::size_t basis_size = 0;
  std::size_t group_order = 1;  ///< sign group order, doubled with a swap

  std::size_t total_dimension() const;  ///< sum of dimension * multiplicity
};

/// Throws SymmetryError when the target or the basis is not invariant.
SymmetryBlocking block_decompose(const GramProblem& problem, const SignSymmetryGroup& signs,
                                 const std::optional<std::vector<std::size_t>>& swap);

/// Q = sum over blocks and copies of T^T X T.
Eigen::MatrixXd lift_solution(const std::vector<GramBlock>& blocks, std::size_t basis_size,
                              const std::vector<Eigen::MatrixXd>& block_matrices);
RationalMatrix lift_solution(const std::vector<GramBlock>& blocks, std::size_t basis_size,
                             const std::vector<RationalMatrix>& block_matrices);

/// Table: block index, label, multiplicity, dimension.
void write_blocking_report(std::ostream& out, const SymmetryBlocking& blocking);

}  // namespace soscert
