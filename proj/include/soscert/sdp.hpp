#pragma once

// Small dense block SDP:  maximize t  subject to  <A_k, G> = b_k,
// G_b - t I >= 0 for every block b.

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "soscert/gram.hpp"

namespace soscert {

/// Coefficient of G(k,l), k <= l. Off-diagonal coefficients already include
/// both triangles, so <A, G> = sum over entries of value * G(k,l).
struct SdpEntry {
  std::size_t block, k, l;
  double value;
};

struct SdpInstance {
  std::vector<std::size_t> block_dims;
  std::vector<std::vector<SdpEntry>> rows;
  std::vector<double> rhs;

  std::size_t constraint_count() const noexcept { return rows.size(); }
};

/// Floating copy of the selected rows of an exact block system.
SdpInstance make_instance(const BlockGramSystem& sys, std::span<const std::size_t> rows);
SdpInstance make_instance(const BlockGramSystem& sys);

enum class SdpStatus { kOptimal, kMaxIter, kNumericalFailure };
const char* to_string(SdpStatus s);

struct SdpConfig {
  double feas_tol = 1e-9;
  double gap_tol = 1e-8;
  int max_iter = 200;
  /// Final least-change correction of G onto the affine constraints.
  bool polish = true;
  /// Optional per-iteration lines "iter t residual gap".
  std::ostream* trace = nullptr;
};

struct SdpSolution {
  std::vector<Eigen::MatrixXd> blocks;  ///< G per block
  double t = 0;                         ///< min eigenvalue bound reached
  double residual = 0;                  ///< from residual_check
  double gap = 0;
  int iterations = 0;
  SdpStatus status = SdpStatus::kNumericalFailure;
};

/// Deterministic for a given instance and config.
SdpSolution solve(const SdpInstance& instance, const SdpConfig& config = {});

struct ResidualReport {
  double max_residual = 0;   ///< max_k |<A_k, G> - b_k|, compensated sums
  double min_eigenvalue = 0; ///< over all blocks
};

ResidualReport residual_check(const SdpInstance& instance, const std::vector<Eigen::MatrixXd>& blocks);

}  // namespace soscert
