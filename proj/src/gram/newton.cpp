#include <algorithm>
#include <functional>
#include <unordered_set>

#include "soscert/errors.hpp"
#include "soscert/gram.hpp"

namespace soscert {

namespace {

// Phase-one simplex on  sum_j lambda_j v_j = point, sum_j lambda_j = 1,
// lambda >= 0. Dense rational tableau, Bland's rule.
bool feasible_combination(const Exponent& point, const std::vector<Exponent>& vertices) {
  const std::size_t n = point.size(), rows = n + 1, cols = vertices.size();
  const std::size_t width = cols + rows + 1;  // structural, artificial, rhs
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(width));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < cols; ++j) t[r][j] = r < n ? Rational(vertices[j][r]) : Rational(1);
    t[r][cols + r] = 1;
    t[r][width - 1] = r < n ? Rational(point[r]) : Rational(1);
  }
  std::vector<std::size_t> basic(rows);
  for (std::size_t r = 0; r < rows; ++r) basic[r] = cols + r;

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> cost(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= cols && j < cols + rows) continue;
    for (std::size_t r = 0; r < rows; ++r) cost[j] -= t[r][j];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = rows;
    Rational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][width - 1] / t[r][enter];
      if (leave == rows || ratio < best || (ratio == best && basic[r] < basic[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) break;  // unbounded direction cannot occur in phase one
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational f = t[r][enter];
      for (std::size_t j = 0; j < width; ++j) t[r][j] -= f * t[leave][j];
    }
    const Rational f = cost[enter];
    for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    basic[leave] = enter;
  }
  // Objective value is -cost[rhs].
  return cost[width - 1] == 0;
}

std::vector<Exponent> box_candidates(const std::vector<unsigned>& half_max, unsigned half_total) {
  std::vector<Exponent> out;
  Exponent e(half_max.size());
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned used) {
    if (v == half_max.size()) {
      out.push_back(e);
      return;
    }
    for (unsigned d = 0; d <= half_max[v] && used + d <= half_total; ++d) {
      e.set(v, d);
      rec(v + 1, used + d);
    }
    e.set(v, 0);
  };
  rec(0, 0);
  return out;
}

void sort_descending(std::vector<Exponent>& v) {
  std::sort(v.begin(), v.end(), [](const Exponent& a, const Exponent& b) { return GradedLexLess{}(b, a); });
}

}  // namespace

std::optional<std::size_t> MonomialBasis::index_of(const Exponent& m) const {
  auto it = std::find(monomials.begin(), monomials.end(), m);
  if (it == monomials.end()) return std::nullopt;
  return static_cast<std::size_t>(it - monomials.begin());
}

Polynomial MonomialBasis::polynomial(std::size_t i) const {
  return Polynomial::monomial(context, monomials.at(i));
}

bool in_convex_hull(const Exponent& point, const std::vector<Exponent>& vertices) {
  if (vertices.empty()) return false;
  if (std::find(vertices.begin(), vertices.end(), point) != vertices.end()) return true;
  for (std::size_t v = 0; v < point.size(); ++v) {
    unsigned lo = vertices.front()[v], hi = lo;
    for (const auto& e : vertices) {
      lo = std::min(lo, e[v]);
      hi = std::max(hi, e[v]);
    }
    if (point[v] < lo || point[v] > hi) return false;
  }
  return feasible_combination(point, vertices);
}

MonomialBasis candidate_basis(const Polynomial& p) {
  MonomialBasis basis{p.context(), {}};
  if (p.is_zero()) return basis;
  const auto prof = degree_profile(p);
  if (prof.total % 2 != 0)
    throw NotSosCandidate("odd total degree " + std::to_string(prof.total));

  std::vector<Exponent> support;
  std::unordered_set<Exponent, ExponentHash> support_set;
  for (const auto& [e, c] : p.terms()) {
    support.push_back(e);
    support_set.insert(e);
  }
  std::vector<unsigned> half_max;
  for (int d : prof.per_variable) half_max.push_back(static_cast<unsigned>(d) / 2);

  std::vector<Exponent> kept;
  for (const auto& m : box_candidates(half_max, static_cast<unsigned>(prof.total) / 2))
    if (in_convex_hull(m.doubled(), support)) kept.push_back(m);

  // Drop m while m^2 is absent from p and cannot arise as a cross term.
  std::unordered_set<Exponent, ExponentHash> alive(kept.begin(), kept.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& m : kept) {
      if (!alive.count(m)) continue;
      const Exponent twice = m.doubled();
      if (support_set.count(twice)) continue;
      bool cross = false;
      for (const auto& a : alive) {
        if (a == m) continue;
        bool fits = true;
        Exponent b(twice.size());
        for (std::size_t v = 0; v < twice.size() && fits; ++v) {
          if (a[v] > twice[v]) fits = false;
          else b.set(v, twice[v] - a[v]);
        }
        if (fits && alive.count(b)) {
          cross = true;
          break;
        }
      }
      if (!cross) {
        alive.erase(m);
        changed = true;
      }
    }
  }
  for (const auto& m : kept)
    if (alive.count(m)) basis.monomials.push_back(m);
  if (basis.monomials.empty()) throw NotSosCandidate("empty monomial basis");
  sort_descending(basis.monomials);
  return basis;
}

MonomialBasis full_basis(const VariableContext& ctx, unsigned half_degree) {
  MonomialBasis basis{ctx, box_candidates(std::vector<unsigned>(ctx.size(), half_degree), half_degree)};
  sort_descending(basis.monomials);
  return basis;
}

}  // namespace soscert
