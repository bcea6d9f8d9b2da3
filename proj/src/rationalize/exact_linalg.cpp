#include "soscert/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "soscert/errors.hpp"

namespace soscert {

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] != rows[j][i]) throw Error("matrix is not symmetric");
      m.a_[i * m.n_ + j] = rows[i][j];
    }
  }
  return m;
}

void RationalMatrix::set(std::size_t i, std::size_t j, const Rational& v) {
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = v;
}

void RationalMatrix::add(std::size_t i, std::size_t j, const Rational& v) {
  a_[i * n_ + j] += v;
  if (i != j) a_[j * n_ + i] += v;
}

Rational RationalMatrix::quadratic_form(const std::vector<Rational>& x) const {
  Rational s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] == 0) continue;
    Rational row;
    for (std::size_t j = 0; j < n_; ++j)
      if (x[j] != 0) row += a_[i * n_ + j] * x[j];
    s += x[i] * row;
  }
  return s;
}

std::string to_string(const RationalMatrix& m) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    s << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dimension(); ++j) s << (j ? ", " : "") << to_string(m(i, j));
    s << ']';
  }
  s << ']';
  return s.str();
}

namespace {

using Row = std::map<std::size_t, Rational>;

// r -= f * b over sparse maps.
void subtract_scaled(Row& r, const Rational& f, const Row& b) {
  for (const auto& [c, v] : b) {
    auto [it, inserted] = r.try_emplace(c);
    it->second -= f * v;
    if (it->second == 0) r.erase(it);
  }
}

}  // namespace

RowSelection select_independent_rows(const std::vector<SparseVector>& rows, const std::vector<Rational>& rhs) {
  struct Pivot {
    Row row;
    Rational rhs;
  };
  std::map<std::size_t, Pivot> basis;  // leading column -> normalized row
  RowSelection out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Row r;
    for (const auto& [c, v] : rows[k])
      if (v != 0) r[c] += v;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    Rational b = rhs[k];
    for (auto it = r.begin(); it != r.end();) {
      auto p = basis.find(it->first);
      if (p == basis.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      const Rational f = it->second;
      subtract_scaled(r, f, p->second.row);
      b -= f * p->second.rhs;
      it = r.upper_bound(col);
    }
    if (r.empty()) {
      if (b != 0 && !out.inconsistent) out.inconsistent = k;
      continue;
    }
    const Rational lead = r.begin()->second;
    for (auto& [c, v] : r) v /= lead;
    b /= lead;
    const std::size_t lead_col = r.begin()->first;
    basis.emplace(lead_col, Pivot{std::move(r), std::move(b)});
    out.independent.push_back(k);
  }
  return out;
}

std::vector<Rational> solve_spd(std::vector<SparseVector> rows, const std::vector<Rational>& rhs) {
  const std::size_t m = rows.size();
  std::vector<Row> a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (auto& [c, v] : rows[i])
      if (v != 0) a[i][c] = std::move(v);
  std::vector<Rational> r = rhs;
  std::vector<char> active(m, 1);
  std::vector<std::size_t> order;
  order.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t p = m;
    for (std::size_t i = 0; i < m; ++i)
      if (active[i] && (p == m || a[i].size() < a[p].size())) p = i;
    auto d = a[p].find(p);
    if (d == a[p].end() || d->second <= 0) throw Error("normal matrix is not positive definite");
    const Rational piv = d->second;
    for (const auto& [i, v] : a[p]) {
      if (i == p) continue;
      const Rational f = a[i].at(p) / piv;
      subtract_scaled(a[i], f, a[p]);
      a[i].erase(p);
      r[i] -= f * r[p];
    }
    active[p] = 0;
    order.push_back(p);
  }
  std::vector<Rational> x(m);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t p = *it;
    Rational s = r[p];
    for (const auto& [c, v] : a[p])
      if (c != p) s -= v * x[c];
    x[p] = s / a[p].at(p);
  }
  return x;
}

std::vector<std::vector<Rational>> nullspace(const std::vector<std::vector<Rational>>& rows, std::size_t columns) {
  std::vector<std::vector<Rational>> a = rows;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < columns && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[rank], a[p]);
    const Rational lead = a[rank][c];
    for (auto& v : a[rank]) v /= lead;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < columns; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<std::vector<Rational>> out;
  std::vector<char> is_pivot(columns, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(columns);
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a[k][f];
    out.push_back(std::move(v));
  }
  return out;
}

LdltResult ldlt_exact(const RationalMatrix& input, PivotRule rule) {
  const std::size_t n = input.dimension();
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s[i][j] = input(i, j);
  std::vector<char> remaining(n, 1);
  std::vector<std::size_t> eliminated;
  LdltResult out;

  // v with v^T A v = w^T S w, where w lives on the remaining indices.
  auto lift_witness = [&](std::vector<Rational> v) {
    for (auto it = eliminated.rbegin(); it != eliminated.rend(); ++it) {
      const std::size_t k = static_cast<std::size_t>(it - eliminated.rbegin());
      const auto& f = out.factor[out.factor.size() - 1 - k];
      Rational acc;
      for (std::size_t i = 0; i < n; ++i)
        if (i != *it && f[i] != 0) acc += f[i] * v[i];
      v[*it] = -acc;
    }
    out.psd = false;
    out.witness = std::move(v);
    return out;
  };
  // S[p][p] == 0 and S[p][j] != 0: c e_p + e_j is negative.
  auto pair_witness = [&](std::size_t p, std::size_t j) {
    std::vector<Rational> v(n);
    if (s[j][j] < 0) {
      v[j] = 1;
    } else {
      v[p] = -(s[j][j] + 1) / (2 * s[p][j]);
      v[j] = 1;
    }
    return lift_witness(std::move(v));
  };

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    if (rule == PivotRule::kNatural) {
      for (std::size_t i = 0; i < n && p == n; ++i)
        if (remaining[i]) p = i;
    } else {
      for (std::size_t i = 0; i < n; ++i)
        if (remaining[i] && (p == n || s[i][i] > s[p][p])) p = i;
    }
    if (p == n) break;
    if (s[p][p] < 0) {
      std::vector<Rational> v(n);
      v[p] = 1;
      return lift_witness(std::move(v));
    }
    if (s[p][p] == 0) {
      for (std::size_t i = 0; i < n; ++i)
        if (remaining[i] && s[i][i] < 0) {
          std::vector<Rational> v(n);
          v[i] = 1;
          return lift_witness(std::move(v));
        }
      // Natural order may reach a zero pivot whose row is not zero.
      for (std::size_t j = 0; j < n; ++j)
        if (remaining[j] && j != p && s[p][j] != 0) return pair_witness(p, j);
      if (rule == PivotRule::kLargestDiagonal) {
        // Every remaining diagonal is zero; any nonzero entry refutes.
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (remaining[i] && remaining[j] && i != j && s[i][j] != 0) return pair_witness(i, j);
        break;
      }
      remaining[p] = 0;
      continue;
    }
    const Rational piv = s[p][p];
    std::vector<Rational> f(n);
    for (std::size_t i = 0; i < n; ++i)
      if (remaining[i] && s[i][p] != 0) f[i] = s[i][p] / piv;
    remaining[p] = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!remaining[i] || f[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (remaining[j] && s[p][j] != 0) s[i][j] -= f[i] * s[p][j];
    }
    eliminated.push_back(p);
    out.factor.push_back(std::move(f));
    out.pivots.push_back(piv);
  }
  out.psd = true;
  return out;
}

}  // namespace soscert
