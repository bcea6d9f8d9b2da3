#pragma once

// From a floating Gram solution to an exact certificate: round to dyadic
// rationals, project exactly onto the constraints, decide PSD by exact
// LDL^T, and read off the squares. Also exact facial reduction: when the
// numeric solution has a clear kernel whose basis is rational, shrink every
// block to the complement and solve again.

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "soscert/certificate.hpp"
#include "soscert/exact_linalg.hpp"
#include "soscert/gram.hpp"

namespace soscert {

struct RoundingOptions {
  Integer denominator = Integer(1) << 20;
  /// Largest accepted Frobenius distance between the rounded and the
  /// projected matrices.
  double max_move = 1e-3;
};

/// Rounds each block entry to a multiple of 1/denominator, then applies the
/// least Frobenius change that satisfies `rows` of `sys` exactly. Throws
/// RetryWithLargerDenominator when the change exceeds max_move.
std::vector<RationalMatrix> round_and_project(const BlockGramSystem& sys, std::span<const std::size_t> rows,
                                              const std::vector<Eigen::MatrixXd>& blocks,
                                              const RoundingOptions& options = {});

/// Single-matrix form over the plain Gram problem.
RationalMatrix round_and_project(const Eigen::MatrixXd& q, const GramProblem& problem,
                                 const RoundingOptions& options = {});

struct PsdDecision {
  bool psd = false;
  LdltResult factorization;
  std::vector<Rational> witness;  ///< v^T Q v < 0 when !psd
};

PsdDecision is_psd_exact(const RationalMatrix& q, PivotRule rule = PivotRule::kLargestDiagonal);

/// Squares from the LDL^T of q over `basis`; checked against `target`
/// exactly before returning (Error on mismatch, which cannot happen when q
/// is PSD and satisfies the Gram constraints).
Certificate extract_sos(const RationalMatrix& q, const MonomialBasis& basis, const Polynomial& target,
                        PivotRule rule = PivotRule::kLargestDiagonal);

/// Block form: one set of squares per block copy.
Certificate extract_sos(const BlockGramSystem& sys, const std::vector<RationalMatrix>& blocks);

struct FaceReduction {
  std::vector<GramBlock> blocks;
  std::size_t removed = 0;  ///< total dimension dropped
};

/// Looks for a separated cluster of near-zero eigenvalues in each block and
/// a rational basis of its eigenspace. nullopt when no block has one.
std::optional<FaceReduction> reduce_face(const BlockGramSystem& sys, const std::vector<Eigen::MatrixXd>& blocks);

}  // namespace soscert
