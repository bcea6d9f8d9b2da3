#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "soscert/exact_linalg.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/rationalize.hpp"
#include "soscert/sdp.hpp"
#include "soscert/verify.hpp"

namespace soscert {

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NotSosCandidate*>(&e)) return kExitNotCandidate;
  if (dynamic_cast<const InfeasibleBasis*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const SymmetryError*>(&e)) return kExitInfeasible;
  if (dynamic_cast<const RetryWithLargerDenominator*>(&e)) return kExitRounding;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const FormatError*>(&e)) return kExitInput;
  return kExitNotSos;
}

template <class F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, exit_code_for(e), e.what());
  }
}

double lifted_residual(const GramProblem& problem, const std::vector<GramBlock>& blocks,
                       const std::vector<Eigen::MatrixXd>& g) {
  const Eigen::MatrixXd q = lift_solution(blocks, problem.basis.size(), g);
  double worst = 0;
  for (const auto& c : problem.constraints) {
    double s = -c.rhs.get_d(), comp = 0;
    for (const auto& e : c.entries) {
      const double v = e.weight.get_d() * q(e.i, e.j);
      const double t = s + v;
      comp += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
      s = t;
    }
    worst = std::max(worst, std::abs(s + comp));
  }
  return worst;
}

RowSelection select_rows(const BlockGramSystem& sys) {
  std::vector<SparseVector> rows;
  std::vector<Rational> rhs;
  for (const auto& c : sys.constraints) {
    SparseVector r;
    for (const auto& e : c.entries) r.emplace_back(sys.column(e.block, e.k, e.l), e.coefficient);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(r));
    rhs.push_back(c.rhs);
  }
  return select_independent_rows(rows, rhs);
}

bool consistent(const Polynomial& p, const MonomialBasis& basis, const std::vector<GramBlock>& blocks) {
  return !select_rows(assemble_blocks(p, basis, blocks)).inconsistent.has_value();
}

void log_line(const FindOptions& opt, const std::string& s) {
  if (opt.log) *opt.log << s << '\n';
}

}  // namespace

std::optional<std::vector<std::size_t>> find_swap(const Polynomial& p) {
  const std::size_t n = p.context().size();
  if (n < 2 || n > 8) return std::nullopt;
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      found.push_back(perm);
      return;
    }
    if (perm[v] != v) return rec(v + 1);
    rec(v + 1);
    for (std::size_t w = v + 1; w < n; ++w) {
      if (perm[w] != w) continue;
      std::swap(perm[v], perm[w]);
      rec(v + 1);
      std::swap(perm[v], perm[w]);
    }
  };
  rec(0);
  auto moved = [](const std::vector<std::size_t>& q) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < q.size(); ++i) c += q[i] != i;
    return c;
  };
  std::stable_sort(found.begin(), found.end(), [&](const auto& a, const auto& b) { return moved(a) > moved(b); });
  for (const auto& q : found)
    if (moved(q) > 0 && detect_swap(p, q)) return q;
  return std::nullopt;
}

FindReport find_certificate(const Polynomial& p, const FindOptions& opt) {
  FindReport rep;
  rep.certificate.target = p;
  if (p.is_zero()) {
    rep.verified = true;
    return rep;
  }

  const MonomialBasis basis = stage("basis", [&] {
    if (!opt.dense) return candidate_basis(p);
    const auto prof = degree_profile(p);
    if (prof.total % 2) throw NotSosCandidate("odd total degree " + std::to_string(prof.total));
    MonomialBasis b = full_basis(p.context(), static_cast<unsigned>(prof.total) / 2);
    if (b.size() > opt.dense_limit)
      throw StageError("basis", kExitInput,
                       "dense basis has dimension " + std::to_string(b.size()) + ", above the limit " +
                           std::to_string(opt.dense_limit));
    return b;
  });
  const GramProblem problem = stage("gram", [&] { return build_gram_problem(p, basis); });
  rep.basis_size = basis.size();
  rep.constraint_count = problem.constraints.size();
  log_line(opt, "basis " + std::to_string(rep.basis_size) + ", constraints " + std::to_string(rep.constraint_count));

  std::vector<GramBlock> blocks = stage("symmetry", [&] {
    if (!opt.symmetry) return std::vector<GramBlock>{identity_block(basis.size())};
    const auto signs = detect_sign_symmetries(p);
    rep.swap = opt.swap;
    if (!rep.swap && opt.detect_swap) rep.swap = find_swap(p);
    const auto blocking = block_decompose(problem, signs, rep.swap);
    rep.group_order = blocking.group_order;
    std::ostringstream table;
    write_blocking_report(table, blocking);
    rep.blocking_table = table.str();
    return blocking.blocks;
  });
  for (const auto& b : blocks) rep.block_profile.emplace_back(b.multiplicity(), b.dimension());

  SdpConfig cfg;
  cfg.feas_tol = opt.feas_tol;
  bool rounding_tried = false;
  for (int round = 0; round <= opt.max_face_rounds; ++round) {
    const BlockGramSystem sys = stage("gram", [&] { return assemble_blocks(p, basis, blocks); });
    const RowSelection sel = select_rows(sys);
    if (sel.inconsistent)
      throw StageError("gram", kExitInfeasible, "block constraints are inconsistent; no invariant Gram matrix exists");
    rep.independent_constraints = sel.independent.size();
    const SdpInstance inst = make_instance(sys, sel.independent);
    const SdpSolution sol = solve(inst, cfg);
    rep.sdp_t = sol.t;
    rep.sdp_residual = sol.residual;
    rep.sdp_iterations = sol.iterations;
    rep.sdp_status = to_string(sol.status);
    rep.lifted_residual = lifted_residual(problem, sys.blocks, sol.blocks);
    {
      std::ostringstream s;
      s << "round " << round << ": dims";
      for (const auto& b : sys.blocks) s << ' ' << b.dimension();
      s << ", rows " << sel.independent.size() << ", sdp " << rep.sdp_status << " in " << sol.iterations
        << " iterations, t " << sol.t << ", residual " << sol.residual;
      log_line(opt, s.str());
    }
    double gmax = 1;
    for (const auto& g : sol.blocks)
      if (g.size() && g.allFinite()) gmax = std::max(gmax, g.cwiseAbs().maxCoeff());
    // A stalled solve near a face is still a usable iterate.
    if (sol.status == SdpStatus::kNumericalFailure && !(sol.residual <= 1e-4 * gmax))
      throw StageError("sdp", kExitNotSos, "solver failed numerically (residual " + std::to_string(sol.residual) + ")");

    if (sol.t > 1e-9) {
      for (unsigned bits = 10; bits <= 200; bits += 10) {
        Integer den = Integer(1) << bits;
        if (den > opt.denominator_bound) {
          if (bits > 10) break;
          den = opt.denominator_bound;
        }
        rounding_tried = true;
        std::vector<RationalMatrix> q;
        try {
          q = round_and_project(sys, sel.independent, sol.blocks, {den, 1e-3 * gmax});
        } catch (const RetryWithLargerDenominator& e) {
          log_line(opt, "denominator " + den.get_str() + ": " + e.what());
          if (den == opt.denominator_bound) break;
          continue;
        }
        bool psd = true;
        for (const auto& m : q) psd = psd && is_psd_exact(m).psd;
        log_line(opt, "denominator " + den.get_str() + ": " + (psd ? "PSD" : "not PSD"));
        if (psd) {
          rep.certificate = stage("extract", [&] { return extract_sos(sys, q); });
          rep.denominator_bits = static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
          rep.verified = verify_identity(p, rep.certificate).ok;
          return rep;
        }
        if (den == opt.denominator_bound) break;
      }
    }

    auto face = stage("facial-reduction", [&] { return reduce_face(sys, sol.blocks); });
    if (face && !consistent(p, basis, face->blocks)) {
      log_line(opt, "face reduction discarded: reduced constraints are inconsistent");
      face.reset();
    }
    if (!face) {
      if (sol.t < -1e-6) {
        std::ostringstream s;
        s << "largest achievable minimum eigenvalue is " << sol.t << " < 0: no PSD Gram matrix, not a sum of squares";
        throw StageError("sdp", kExitNotSos, s.str());
      }
      if (rounding_tried)
        throw StageError("rounding", kExitRounding, "no PSD rational Gram matrix up to the denominator bound");
      throw StageError("facial-reduction", kExitNotSos,
                       "no strictly feasible Gram matrix and no rational kernel to reduce by");
    }
    rep.face_rounds = round + 1;
    rep.face_removed += face->removed;
    log_line(opt, "face reduction removed " + std::to_string(face->removed) + " dimensions");
    blocks = std::move(face->blocks);
    rep.block_profile.clear();
    for (const auto& b : blocks) rep.block_profile.emplace_back(b.multiplicity(), b.dimension());
  }
  throw StageError("facial-reduction", kExitNotSos, "no certificate after " + std::to_string(opt.max_face_rounds) + " reductions");
}

std::string find_report_json(const FindReport& r) {
  nlohmann::ordered_json j;
  j["basis_size"] = r.basis_size;
  j["constraints"] = r.constraint_count;
  j["group_order"] = r.group_order;
  if (r.swap) j["swap"] = *r.swap;
  nlohmann::ordered_json prof = nlohmann::ordered_json::array();
  for (const auto& [m, d] : r.block_profile) prof.push_back({m, d});
  j["final_blocks"] = prof;
  j["independent_constraints"] = r.independent_constraints;
  j["face_reductions"] = r.face_rounds;
  j["face_dimensions_removed"] = r.face_removed;
  j["sdp_status"] = r.sdp_status;
  j["sdp_iterations"] = r.sdp_iterations;
  j["sdp_min_eigenvalue"] = r.sdp_t;
  j["sdp_residual"] = r.sdp_residual;
  j["lifted_residual"] = r.lifted_residual;
  j["denominator_bits"] = r.denominator_bits;
  j["squares"] = r.certificate.terms.size();
  j["verified"] = r.verified;
  return j.dump(2);
}

}  // namespace soscert
