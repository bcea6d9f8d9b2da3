// Infeasible-start primal-dual path following with the HKM direction and a
// Mehrotra corrector. Primal: min -t, A(X) + f t = b, X >= 0, t free
// (so G = X + t I, f_k = trace A_k). Dual: Z = -A^T y >= 0, f^T y = -1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <ostream>

#include "soscert/errors.hpp"
#include "soscert/sdp.hpp"
#include "soscert/simd/kernels.hpp"

namespace soscert {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

// Column-major C = A * B through the row-major kernel: (B^T A^T)^T.
MatrixXd matmul(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd c(a.rows(), b.cols());
  simd::active_kernels().gemm(b.data(), a.data(), c.data(), b.cols(), b.rows(), a.rows());
  return c;
}

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

double frob_dot(const Blocks& a, const Blocks& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += simd::active_kernels().dot(a[i].data(), b[i].data(), static_cast<std::size_t>(a[i].size()));
  return s;
}

struct Entry {
  std::size_t k, l;
  double v;
};

// Constraint data grouped by block: per block, the touching constraints
// with their entries in that block.
struct Layout {
  std::vector<std::size_t> dims;
  std::size_t m = 0;
  std::vector<std::vector<std::pair<std::size_t, std::vector<Entry>>>> by_block;
  VectorXd b, f, scale;
};

// Rows and their entries in a canonical order, so the iterates do not
// depend on how the caller listed the constraints.
SdpInstance canonical(const SdpInstance& inst) {
  auto key = [](const SdpEntry& e) { return std::make_tuple(e.block, e.k, e.l, e.value); };
  std::vector<std::pair<std::vector<SdpEntry>, double>> rows;
  for (std::size_t i = 0; i < inst.rows.size(); ++i) {
    auto r = inst.rows[i];
    std::sort(r.begin(), r.end(), [&](const SdpEntry& a, const SdpEntry& b) { return key(a) < key(b); });
    rows.emplace_back(std::move(r), inst.rhs[i]);
  }
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const bool less = std::lexicographical_compare(a.first.begin(), a.first.end(), b.first.begin(), b.first.end(),
                                                   [&](const SdpEntry& x, const SdpEntry& y) { return key(x) < key(y); });
    if (less) return true;
    const bool greater = std::lexicographical_compare(b.first.begin(), b.first.end(), a.first.begin(), a.first.end(),
                                                      [&](const SdpEntry& x, const SdpEntry& y) { return key(x) < key(y); });
    return !greater && a.second < b.second;
  });
  SdpInstance out;
  out.block_dims = inst.block_dims;
  for (auto& [r, b] : rows) {
    out.rows.push_back(std::move(r));
    out.rhs.push_back(b);
  }
  return out;
}

Layout make_layout(const SdpInstance& inst) {
  Layout lay;
  lay.dims = inst.block_dims;
  lay.m = inst.rows.size();
  lay.by_block.resize(inst.block_dims.size());
  lay.b.resize(lay.m);
  lay.f = VectorXd::Zero(lay.m);
  lay.scale.resize(lay.m);
  for (std::size_t i = 0; i < lay.m; ++i) {
    double norm2 = 0;
    for (const auto& e : inst.rows[i]) norm2 += e.k == e.l ? e.value * e.value : 0.5 * e.value * e.value;
    const double s = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 1.0;
    lay.scale[i] = s;
    lay.b[i] = s * inst.rhs[i];
    std::vector<std::vector<Entry>> per(inst.block_dims.size());
    for (const auto& e : inst.rows[i]) {
      if (e.block >= inst.block_dims.size() || e.k > e.l || e.l >= inst.block_dims[e.block])
        throw SolverError("constraint entry outside its block");
      per[e.block].push_back({e.k, e.l, s * e.value});
      if (e.k == e.l) lay.f[i] += s * e.value;
    }
    for (std::size_t b = 0; b < per.size(); ++b)
      if (!per[b].empty()) lay.by_block[b].emplace_back(i, std::move(per[b]));
  }
  return lay;
}

double inner(const std::vector<Entry>& es, const MatrixXd& h) {
  double s = 0;
  for (const auto& e : es) s += e.k == e.l ? e.v * h(e.k, e.k) : 0.5 * e.v * (h(e.k, e.l) + h(e.l, e.k));
  return s;
}

VectorXd apply_a(const Layout& lay, const Blocks& x) {
  VectorXd out = VectorXd::Zero(lay.m);
  for (std::size_t b = 0; b < lay.dims.size(); ++b)
    for (const auto& [i, es] : lay.by_block[b]) out[i] += inner(es, x[b]);
  return out;
}

Blocks apply_at(const Layout& lay, const VectorXd& y) {
  Blocks out;
  for (std::size_t b = 0; b < lay.dims.size(); ++b) {
    MatrixXd s = MatrixXd::Zero(lay.dims[b], lay.dims[b]);
    for (const auto& [i, es] : lay.by_block[b])
      for (const auto& e : es) {
        if (e.k == e.l) {
          s(e.k, e.k) += y[i] * e.v;
        } else {
          s(e.k, e.l) += 0.5 * y[i] * e.v;
          s(e.l, e.k) += 0.5 * y[i] * e.v;
        }
      }
    out.push_back(std::move(s));
  }
  return out;
}

// M_ij = tr(A_i X A_j Zinv).
MatrixXd schur(const Layout& lay, const Blocks& x, const Blocks& zinv) {
  const auto& kern = simd::active_kernels();
  MatrixXd m = MatrixXd::Zero(lay.m, lay.m);
  for (std::size_t b = 0; b < lay.dims.size(); ++b) {
    const std::size_t d = lay.dims[b];
    MatrixXd bm(d, d);
    for (const auto& [i, ei] : lay.by_block[b]) {
      bm.setZero();
      // X A_i Zinv, column by column: A_i = sum v/2 (e_k e_l^T + e_l e_k^T).
      for (const auto& e : ei) {
        const double h = e.k == e.l ? e.v : 0.5 * e.v;
        for (std::size_t c = 0; c < d; ++c) {
          kern.axpy(h * zinv[b](e.l, c), x[b].col(e.k).data(), bm.col(c).data(), d);
          if (e.k != e.l) kern.axpy(h * zinv[b](e.k, c), x[b].col(e.l).data(), bm.col(c).data(), d);
        }
      }
      for (const auto& [j, ej] : lay.by_block[b]) m(i, j) += inner(ej, bm);
    }
  }
  return sym(m);
}

// Largest alpha with X + alpha dX >= 0 (infinity when dX keeps it PD).
double max_step(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0;
  MatrixXd l = llt.matrixL();
  MatrixXd t = l.triangularView<Eigen::Lower>().solve(dx);
  t = l.triangularView<Eigen::Lower>().solve(t.transpose()).transpose();
  const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(sym(t), Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double step_length(const Blocks& x, const Blocks& dx, double tau) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < x.size(); ++b) a = std::min(a, max_step(x[b], dx[b]));
  return std::min(1.0, tau * a);
}

struct Direction {
  Blocks dx, dz;
  VectorXd dy;
  double dt = 0;
};

class Ipm {
 public:
  Ipm(const Layout& lay, const SdpConfig& cfg) : lay_(lay), cfg_(cfg) {}

  SdpSolution run() {
    std::size_t n_total = 0;
    for (auto d : lay_.dims) n_total += d;
    const double nn = static_cast<double>(std::max<std::size_t>(n_total, 1));
    double xi = std::max(10.0, std::sqrt(nn)), eta = xi;
    for (std::size_t i = 0; i < lay_.m; ++i) xi = std::max(xi, (1 + std::abs(lay_.b[i])) * std::sqrt(nn));
    for (auto d : lay_.dims) {
      x_.push_back(xi * MatrixXd::Identity(d, d));
      z_.push_back(eta * MatrixXd::Identity(d, d));
    }
    y_ = VectorXd::Zero(lay_.m);
    t_ = 0;

    SdpSolution sol;
    sol.status = SdpStatus::kMaxIter;
    const double bnorm = lay_.b.norm();
    int stalls = 0;
    for (int it = 0;; ++it) {
      const VectorXd rp = lay_.b - apply_a(lay_, x_) - lay_.f * t_;
      Blocks rd = apply_at(lay_, -y_);
      for (std::size_t b = 0; b < rd.size(); ++b) rd[b] -= z_[b];
      const double rf = -1 - lay_.f.dot(y_);
      const double gap = frob_dot(x_, z_);
      const double relp = rp.norm() / (1 + bnorm);
      const double reld = std::sqrt(frob_dot(rd, rd)) + std::abs(rf);
      const double relgap = gap / (1 + std::abs(t_) + std::abs(lay_.b.dot(y_)));
      if (cfg_.trace)
        *cfg_.trace << it << ' ' << t_ << ' ' << std::max(relp, reld) << ' ' << relgap << '\n';
      sol.iterations = it;
      sol.gap = relgap;
      if (!std::isfinite(relp) || !std::isfinite(reld) || !std::isfinite(gap)) {
        sol.status = SdpStatus::kNumericalFailure;
        break;
      }
      if (relp <= cfg_.feas_tol && reld <= cfg_.feas_tol && relgap <= cfg_.gap_tol) {
        sol.status = SdpStatus::kOptimal;
        break;
      }
      if (it >= cfg_.max_iter) break;

      Blocks zinv;
      for (const auto& z : z_) {
        Eigen::LLT<MatrixXd> llt(z);
        if (llt.info() != Eigen::Success) {
          sol.status = SdpStatus::kNumericalFailure;
          return finish(sol);
        }
        zinv.push_back(llt.solve(MatrixXd::Identity(z.rows(), z.cols())));
      }
      MatrixXd m = schur(lay_, x_, zinv);
      Eigen::LDLT<MatrixXd> fac(m);
      if (fac.info() != Eigen::Success || !fac.isPositive()) {
        m.diagonal().array() += 1e-14 * std::max(1.0, m.diagonal().maxCoeff());
        fac.compute(m);
        if (fac.info() != Eigen::Success) {
          sol.status = SdpStatus::kNumericalFailure;
          break;
        }
      }
      const VectorXd mf = refined_solve(fac, lay_.f, zinv);
      const double fmf = lay_.f.dot(mf);
      const double mu = gap / nn;

      // Predictor.
      Blocks h(x_.size());
      for (std::size_t b = 0; b < x_.size(); ++b) h[b] = -x_[b] - matmul(matmul(x_[b], rd[b]), zinv[b]);
      const Direction pred = direction(h, rp, rd, rf, fac, mf, fmf, zinv);
      const double ap = step_length(x_, pred.dx, 1.0), ad = step_length(z_, pred.dz, 1.0);
      Blocks xa = x_, za = z_;
      for (std::size_t b = 0; b < x_.size(); ++b) {
        xa[b] += ap * pred.dx[b];
        za[b] += ad * pred.dz[b];
      }
      const double mu_aff = frob_dot(xa, za) / nn;
      const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

      // Corrector.
      for (std::size_t b = 0; b < x_.size(); ++b)
        h[b] = sigma * mu * zinv[b] - x_[b] - matmul(matmul(x_[b], rd[b]), zinv[b]) -
               matmul(matmul(pred.dx[b], pred.dz[b]), zinv[b]);
      const Direction dir = direction(h, rp, rd, rf, fac, mf, fmf, zinv);
      const double tau = 0.95;
      const double sp = step_length(x_, dir.dx, tau), sd = step_length(z_, dir.dz, tau);
      for (std::size_t b = 0; b < x_.size(); ++b) {
        x_[b] += sp * dir.dx[b];
        z_[b] += sd * dir.dz[b];
      }
      t_ += sp * dir.dt;
      y_ += sd * dir.dy;
      stalls = (sp < 1e-8 && sd < 1e-8) ? stalls + 1 : 0;
      if (stalls >= 3) {
        sol.status = SdpStatus::kNumericalFailure;
        break;
      }
    }
    return finish(sol);
  }

 private:
  // M w = r with two refinement steps against the operator itself rather
  // than the assembled (and rounded) Schur matrix.
  VectorXd refined_solve(const Eigen::LDLT<MatrixXd>& fac, const VectorXd& r, const Blocks& zinv) const {
    VectorXd w = fac.solve(r);
    for (int k = 0; k < 2; ++k) {
      const Blocks aty = apply_at(lay_, w);
      Blocks img(aty.size());
      for (std::size_t b = 0; b < aty.size(); ++b) img[b] = sym(matmul(matmul(x_[b], aty[b]), zinv[b]));
      w += fac.solve(r - apply_a(lay_, img));
    }
    return w;
  }

  Direction direction(const Blocks& h, const VectorXd& rp, const Blocks& rd, double rf,
                      const Eigen::LDLT<MatrixXd>& fac, const VectorXd& mf, double fmf,
                      const Blocks& zinv) const {
    Direction d;
    const VectorXd rt = rp - apply_a(lay_, h);
    const VectorXd w = refined_solve(fac, rt, zinv);
    d.dt = (lay_.f.dot(w) - rf) / fmf;
    d.dy = w - d.dt * mf;
    const Blocks aty = apply_at(lay_, d.dy);
    for (std::size_t b = 0; b < h.size(); ++b) {
      d.dz.push_back(rd[b] - aty[b]);
      d.dx.push_back(sym(h[b] + matmul(matmul(x_[b], aty[b]), zinv[b])));
    }
    return d;
  }

  SdpSolution& finish(SdpSolution& sol) {
    sol.t = t_;
    for (std::size_t b = 0; b < x_.size(); ++b)
      sol.blocks.push_back(x_[b] + t_ * MatrixXd::Identity(x_[b].rows(), x_[b].cols()));
    return sol;
  }

  const Layout& lay_;
  const SdpConfig& cfg_;
  Blocks x_, z_;
  VectorXd y_;
  double t_ = 0;
};

// G += A^T lambda with (A A^T) lambda = b - A(G): smallest Frobenius change.
void polish(const Layout& lay, Blocks& g) {
  MatrixXd k = MatrixXd::Zero(lay.m, lay.m);
  for (std::size_t b = 0; b < lay.dims.size(); ++b) {
    const auto& rows = lay.by_block[b];
    MatrixXd dense = MatrixXd::Zero(lay.dims[b], lay.dims[b]);
    for (const auto& [i, ei] : rows) {
      for (const auto& e : ei) {
        dense(e.k, e.l) += e.k == e.l ? e.v : 0.5 * e.v;
        if (e.k != e.l) dense(e.l, e.k) += 0.5 * e.v;
      }
      for (const auto& [j, ej] : rows) k(i, j) += inner(ej, dense);
      for (const auto& e : ei) dense(e.k, e.l) = dense(e.l, e.k) = 0;
    }
  }
  Eigen::LDLT<MatrixXd> fac(k);
  if (fac.info() != Eigen::Success) return;
  const VectorXd r = lay.b - apply_a(lay, g);
  const VectorXd lambda = fac.solve(r);
  if (!lambda.allFinite()) return;
  const Blocks corr = apply_at(lay, lambda);
  for (std::size_t b = 0; b < g.size(); ++b) g[b] += corr[b];
}

double neumaier_sum(const std::vector<double>& terms) {
  double s = 0, c = 0;
  for (double v : terms) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace

SdpInstance make_instance(const BlockGramSystem& sys, std::span<const std::size_t> rows) {
  SdpInstance inst;
  for (const auto& b : sys.blocks) inst.block_dims.push_back(b.dimension());
  for (std::size_t r : rows) {
    const auto& c = sys.constraints.at(r);
    std::vector<SdpEntry> entries;
    for (const auto& e : c.entries) entries.push_back({e.block, e.k, e.l, e.coefficient.get_d()});
    inst.rows.push_back(std::move(entries));
    inst.rhs.push_back(c.rhs.get_d());
  }
  return inst;
}

SdpInstance make_instance(const BlockGramSystem& sys) {
  std::vector<std::size_t> all(sys.constraints.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return make_instance(sys, all);
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kOptimal: return "optimal";
    case SdpStatus::kMaxIter: return "max-iter";
    case SdpStatus::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

SdpSolution solve(const SdpInstance& instance, const SdpConfig& config) {
  const Layout lay = make_layout(canonical(instance));
  SdpSolution sol;
  if (lay.m == 0) {
    // Nothing constrains G; report the identity.
    for (auto d : lay.dims) sol.blocks.push_back(MatrixXd::Identity(d, d));
    sol.t = 1;
    sol.status = SdpStatus::kOptimal;
    return sol;
  }
  sol = Ipm(lay, config).run();
  if (config.polish && sol.status != SdpStatus::kNumericalFailure) {
    polish(lay, sol.blocks);
    polish(lay, sol.blocks);
  }
  const auto check = residual_check(instance, sol.blocks);
  sol.residual = check.max_residual;
  sol.t = std::min(sol.t, check.min_eigenvalue);
  return sol;
}

ResidualReport residual_check(const SdpInstance& instance, const std::vector<Eigen::MatrixXd>& blocks) {
  if (blocks.size() != instance.block_dims.size()) throw SolverError("block count mismatch");
  ResidualReport rep;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (static_cast<std::size_t>(blocks[b].rows()) != instance.block_dims[b])
      throw SolverError("block dimension mismatch");
    if (blocks[b].rows() == 0) continue;
    const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(sym(blocks[b]), Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, lmin);
  }
  std::vector<double> terms;
  for (std::size_t i = 0; i < instance.rows.size(); ++i) {
    terms.clear();
    for (const auto& e : instance.rows[i]) terms.push_back(e.value * blocks[e.block](e.k, e.l));
    terms.push_back(-instance.rhs[i]);
    rep.max_residual = std::max(rep.max_residual, std::abs(neumaier_sum(terms)));
  }
  return rep;
}

}  // namespace soscert
