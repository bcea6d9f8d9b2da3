#pragma once

// End-to-end search for an exact SOS certificate, and the reproduction run
// for the three-triangle polynomial. Both produce a JSON-shaped report.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "soscert/certificate.hpp"
#include "soscert/errors.hpp"
#include "soscert/symmetry.hpp"

namespace soscert {

/// Process exit codes shared by the command-line tools.
enum ExitCode : int {
  kExitOk = 0,
  kExitIdentity = 1,     ///< certificate identity fails
  kExitStructural = 2,   ///< negative weight or non-manifest multiplier
  kExitInput = 3,        ///< unreadable or malformed input, bad flags
  kExitNotCandidate = 4, ///< odd degree or empty basis
  kExitInfeasible = 5,   ///< basis or symmetry cannot represent the target
  kExitNotSos = 6,       ///< SDP optimum below zero, or solver failure
  kExitRounding = 7,     ///< no PSD rational point up to the denominator bound
};

/// An error tagged with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, int exit_code, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct FindOptions {
  bool symmetry = true;
  /// Every monomial up to half degree instead of the Newton polytope.
  bool dense = false;
  std::size_t dense_limit = 200;
  /// Variable swap to exploit; auto-detected when empty and symmetry is on.
  std::optional<std::vector<std::size_t>> swap;
  bool detect_swap = true;
  Integer denominator_bound = Integer(1) << 60;
  double feas_tol = 1e-9;
  int max_face_rounds = 8;
  std::ostream* log = nullptr;
};

struct FindReport {
  std::size_t basis_size = 0;
  std::size_t constraint_count = 0;
  std::size_t group_order = 1;
  std::optional<std::vector<std::size_t>> swap;
  std::vector<std::pair<std::size_t, std::size_t>> block_profile;  ///< (multiplicity, dimension)
  std::string blocking_table;
  std::size_t independent_constraints = 0;
  int face_rounds = 0;
  std::size_t face_removed = 0;
  double sdp_t = 0;
  double sdp_residual = 0;     ///< on the reduced instance
  double lifted_residual = 0;  ///< full Gram matrix against every constraint
  int sdp_iterations = 0;
  std::string sdp_status;
  unsigned denominator_bits = 0;
  bool verified = false;
  Certificate certificate;
};

/// Throws StageError.
FindReport find_certificate(const Polynomial& p, const FindOptions& options = {});

/// Deterministic first involution of the variables (most transpositions
/// first) that fixes p, if any. Only tried for up to eight variables.
std::optional<std::vector<std::size_t>> find_swap(const Polynomial& p);

std::string find_report_json(const FindReport& report);

struct DemoOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  bool rediscover = false;
  bool symmetry = true;
  std::ostream* log = nullptr;
};

struct DemoResult {
  bool exact_checks_pass = false;
  bool sampling_pass = true;
  bool rediscovered = false;
  std::string json;
  std::optional<Certificate> certificate;
};

DemoResult paper_demo(const DemoOptions& options = {});

}  // namespace soscert
