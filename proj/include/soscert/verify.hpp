#pragma once

// Exact certificate checking. No floating point on this path.

#include <string>
#include <vector>

#include "soscert/certificate.hpp"
#include "soscert/reduction.hpp"

namespace soscert {

enum class VerifyFailure { kNone, kStructural, kIdentity };

struct VerifyReport {
  bool ok = false;
  VerifyFailure failure = VerifyFailure::kNone;
  std::string message;
  /// target - expansion, when the identity fails.
  Polynomial difference;
  /// Highest terms of the difference (at most five), rendered.
  std::vector<std::string> leading_difference;
};

/// Even exponents and nonnegative coefficients only.
bool is_manifestly_nonnegative(const Polynomial& m);

/// Structural checks first (weights >= 0, manifest multipliers, matching
/// variables), then target == sum c_i m_i s_i^2.
VerifyReport verify_identity(const Polynomial& target, const Certificate& cert);

struct RegionAudit {
  bool ok = false;
  bool sum_matches = false;
  std::vector<std::string> lines;  ///< one per part
};

/// Each part must be product(squares) times either (gamma+delta) or
/// (1-gamma)(1-delta), and the parts must sum to `L`. Together these give
/// L >= 0 wherever gamma+delta >= 0 and (1-gamma)(1-delta) >= 0.
RegionAudit verify_region_claim_L(const reduction::LDecomposition& parts, const Polynomial& L);
RegionAudit verify_region_claim_L();

}  // namespace soscert
