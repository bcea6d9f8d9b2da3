#include "soscert/rationalize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "soscert/errors.hpp"
#include "soscert/verify.hpp"

namespace soscert {

namespace {

// Integer coefficients with gcd 1: root = s * primitive, returns s.
Rational make_primitive(Polynomial& root) {
  Integer den = 1, num = 0;
  for (const auto& [e, c] : root.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (num == 0) return 1;
  Rational s(den, num);
  s.canonicalize();
  if (root.leading_term().second < 0) s = -s;
  root *= s;
  return 1 / s;
}

void add_square(Certificate& cert, const Rational& pivot, Polynomial root) {
  if (root.is_zero() || pivot == 0) return;
  const Rational s = make_primitive(root);
  cert.terms.push_back({pivot * s * s, Polynomial::constant(root.context(), 1), std::move(root)});
}

void check_certificate(const Certificate& cert) {
  const auto report = verify_identity(cert.target, cert);
  if (!report.ok) throw Error("extracted squares do not reproduce the target: " + report.message);
}

}  // namespace

std::vector<RationalMatrix> round_and_project(const BlockGramSystem& sys, std::span<const std::size_t> rows,
                                              const std::vector<Eigen::MatrixXd>& blocks,
                                              const RoundingOptions& options) {
  if (blocks.size() != sys.blocks.size()) throw Error("round: block count mismatch");
  const std::size_t ncols = sys.variable_count();
  std::vector<Rational> x(ncols), weight(ncols);
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const std::size_t d = sys.blocks[b].dimension();
    if (static_cast<std::size_t>(blocks[b].rows()) != d) throw Error("round: block dimension mismatch");
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = k; l < d; ++l) {
        const std::size_t c = sys.column(b, k, l);
        x[c] = round_to_denominator(0.5 * (blocks[b](k, l) + blocks[b](l, k)), options.denominator);
        weight[c] = k == l ? 1 : 2;
      }
  }

  // Residual and column incidence of the selected rows.
  std::vector<Rational> resid(rows.size());
  std::vector<std::vector<std::pair<std::size_t, Rational>>> incidence(ncols);
  bool exact = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& con = sys.constraints.at(rows[i]);
    Rational r = con.rhs;
    for (const auto& e : con.entries) {
      const std::size_t c = sys.column(e.block, e.k, e.l);
      r -= e.coefficient * x[c];
      incidence[c].emplace_back(i, e.coefficient);
    }
    exact = exact && r == 0;
    resid[i] = std::move(r);
  }

  if (!exact) {
    std::vector<std::map<std::size_t, Rational>> normal(rows.size());
    for (std::size_t c = 0; c < ncols; ++c)
      for (const auto& [i, a] : incidence[c])
        for (const auto& [j, bcoef] : incidence[c]) normal[i][j] += a * bcoef / weight[c];
    std::vector<SparseVector> nrows(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (auto& [j, v] : normal[i])
        if (v != 0) nrows[i].emplace_back(j, std::move(v));
    const std::vector<Rational> lambda = solve_spd(std::move(nrows), resid);
    double move2 = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
      Rational delta;
      for (const auto& [i, a] : incidence[c]) delta += a * lambda[i];
      if (delta == 0) continue;
      delta /= weight[c];
      x[c] += delta;
      const double dd = delta.get_d();
      move2 += weight[c].get_d() * dd * dd;
    }
    if (std::sqrt(move2) > options.max_move)
      throw RetryWithLargerDenominator("projection moved the matrix by " + std::to_string(std::sqrt(move2)));
  }

  std::vector<RationalMatrix> out;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const std::size_t d = sys.blocks[b].dimension();
    RationalMatrix m(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = k; l < d; ++l) m.set(k, l, x[sys.column(b, k, l)]);
    out.push_back(std::move(m));
  }
  return out;
}

RationalMatrix round_and_project(const Eigen::MatrixXd& q, const GramProblem& problem,
                                 const RoundingOptions& options) {
  const BlockGramSystem sys = assemble_blocks(problem.target, problem.basis, {identity_block(problem.basis.size())});
  std::vector<std::size_t> rows(sys.constraints.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return round_and_project(sys, rows, {q}, options).front();
}

PsdDecision is_psd_exact(const RationalMatrix& q, PivotRule rule) {
  PsdDecision d;
  d.factorization = ldlt_exact(q, rule);
  d.psd = d.factorization.psd;
  d.witness = d.factorization.witness;
  return d;
}

Certificate extract_sos(const RationalMatrix& q, const MonomialBasis& basis, const Polynomial& target,
                        PivotRule rule) {
  if (q.dimension() != basis.size()) throw Error("Gram matrix dimension does not match the basis");
  const auto f = ldlt_exact(q, rule);
  if (!f.psd) throw Error("Gram matrix is not positive semidefinite");
  Certificate cert;
  cert.target = target;
  for (std::size_t k = 0; k < f.pivots.size(); ++k) {
    std::vector<Polynomial::Term> terms;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (f.factor[k][i] != 0) terms.emplace_back(basis.monomials[i], f.factor[k][i]);
    add_square(cert, f.pivots[k], Polynomial::from_terms(basis.context, std::move(terms)));
  }
  check_certificate(cert);
  return cert;
}

Certificate extract_sos(const BlockGramSystem& sys, const std::vector<RationalMatrix>& blocks) {
  Certificate cert;
  cert.target = sys.target;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const auto f = ldlt_exact(blocks.at(b));
    if (!f.psd) throw Error("block " + sys.blocks[b].label + " is not positive semidefinite");
    for (std::size_t c = 0; c < sys.blocks[b].multiplicity(); ++c) {
      std::vector<Polynomial> coords;
      for (std::size_t k = 0; k < sys.blocks[b].dimension(); ++k) coords.push_back(block_coordinate(sys, b, c, k));
      for (std::size_t p = 0; p < f.pivots.size(); ++p) {
        Polynomial root(sys.basis.context);
        for (std::size_t k = 0; k < coords.size(); ++k)
          if (f.factor[p][k] != 0) root = root + f.factor[p][k] * coords[k];
        add_square(cert, f.pivots[p], std::move(root));
      }
    }
  }
  check_certificate(cert);
  return cert;
}

namespace {

// Snap every entry to a rational with denominator at most `den`; `slack`
// bounds the accepted error as a multiple of max(1, |v|).
std::optional<std::vector<std::vector<Rational>>> snap_rows(const Eigen::MatrixXd& k, const Eigen::MatrixXd& g,
                                                            double tol, long den, double slack) {
  std::vector<std::vector<Rational>> out(k.rows(), std::vector<Rational>(k.cols()));
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    Eigen::VectorXd snapped = Eigen::VectorXd::Zero(k.cols());
    for (Eigen::Index j = 0; j < k.cols(); ++j) {
      const double v = k(r, j);
      const Rational q = approximate(v, den);
      if (std::abs(q.get_d() - v) > slack * std::max(1.0, std::abs(v))) return std::nullopt;
      out[r][j] = q;
      snapped(j) = q.get_d();
    }
    if ((g * snapped).norm() > tol * snapped.norm()) return std::nullopt;
  }
  return out;
}

// Rows spanning the numeric kernel, brought to reduced echelon form with
// complete pivoting and snapped to rationals. Denominators grow from 10 to
// 1e6 while the fit stays well inside the spacing of such fractions; a loose
// fit at denominator 100 is the last resort. Each snapped row must still be
// annihilated by g up to `tol`.
std::optional<std::vector<std::vector<Rational>>> rational_kernel(Eigen::MatrixXd k, const Eigen::MatrixXd& g,
                                                                  double tol) {
  const Eigen::Index rows = k.rows(), cols = k.cols();
  std::vector<char> used(cols, 0);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Eigen::Index br = -1, bc = -1;
    double best = 0;
    for (Eigen::Index i = r; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        if (!used[j] && std::abs(k(i, j)) > best) {
          best = std::abs(k(i, j));
          br = i;
          bc = j;
        }
    if (best < 1e-8) return std::nullopt;
    k.row(r).swap(k.row(br));
    k.row(r) /= k(r, bc);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r) k.row(i) -= k(i, bc) * k.row(r);
    used[bc] = 1;
  }
  for (long den = 10; den <= 1000000; den *= 10) {
    const double d = static_cast<double>(den);
    if (auto out = snap_rows(k, g, tol, den, 1e-2 / (d * d))) return out;
  }
  return snap_rows(k, g, tol, 100, 5e-4);
}

// Number of eigenvalues in a cluster near zero separated from the rest by
// a gap of at least 1e3.
std::size_t kernel_size(const Eigen::VectorXd& ev, double scale) {
  const Eigen::Index d = ev.size();
  std::size_t k = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    const double lo = ev(i - 1);
    if (lo > 1e-5 * scale) break;
    const double floor = std::max(std::abs(lo), 1e-13 * scale);
    if (i == d ? std::abs(lo) <= 1e-7 * scale : ev(i) >= 1e3 * floor) k = static_cast<std::size_t>(i);
  }
  return k;
}

}  // namespace

std::optional<FaceReduction> reduce_face(const BlockGramSystem& sys, const std::vector<Eigen::MatrixXd>& blocks) {
  double scale = 1;
  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>> eig;
  for (const auto& g : blocks) {
    eig.emplace_back(0.5 * (g + g.transpose()));
    if (g.rows() > 0) scale = std::max(scale, eig.back().eigenvalues().maxCoeff());
  }
  FaceReduction out;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const auto& blk = sys.blocks[b];
    const std::size_t d = blk.dimension();
    const std::size_t k = d ? kernel_size(eig[b].eigenvalues(), scale) : 0;
    if (k == 0) {
      out.blocks.push_back(blk);
      continue;
    }
    const Eigen::MatrixXd kv = eig[b].eigenvectors().leftCols(static_cast<Eigen::Index>(k)).transpose();
    const auto kernel = rational_kernel(kv, blocks[b], 1e-4 * scale);
    if (!kernel) {
      out.blocks.push_back(blk);
      continue;
    }
    const auto w = nullspace(*kernel, d);
    out.removed += (d - w.size()) * blk.multiplicity();
    if (w.empty()) continue;
    GramBlock reduced;
    reduced.label = blk.label + "'";
    for (const auto& copy : blk.copies) {
      std::vector<SparseVector> rows;
      for (const auto& wr : w) {
        std::map<std::size_t, Rational> acc;
        for (std::size_t j = 0; j < d; ++j) {
          if (wr[j] == 0) continue;
          for (const auto& [p, a] : copy[j]) acc[p] += wr[j] * a;
        }
        SparseVector v;
        for (auto& [p, a] : acc)
          if (a != 0) v.emplace_back(p, std::move(a));
        rows.push_back(std::move(v));
      }
      reduced.copies.push_back(std::move(rows));
    }
    out.blocks.push_back(std::move(reduced));
  }
  if (out.removed == 0) return std::nullopt;
  return out;
}

}  // namespace soscert
