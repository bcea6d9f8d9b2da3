#include "soscert/symmetry.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include "soscert/errors.hpp"

namespace soscert {

namespace {

int lowest_bit(ParityMask m) { return __builtin_ctz(m); }

// Inserts v into a GF(2) echelon basis keyed by lowest set bit; keeps the
// basis fully reduced.
void insert_reduced(std::vector<ParityMask>& basis, ParityMask v) {
  for (ParityMask b : basis)
    if (v & (ParityMask{1} << lowest_bit(b))) v ^= b;
  if (!v) return;
  const ParityMask pivot = ParityMask{1} << lowest_bit(v);
  for (auto& b : basis)
    if (b & pivot) b ^= v;
  basis.push_back(v);
  std::sort(basis.begin(), basis.end(), [](ParityMask a, ParityMask b) { return lowest_bit(a) < lowest_bit(b); });
}

ParityMask reduce(const std::vector<ParityMask>& basis, ParityMask v) {
  for (ParityMask b : basis)
    if (v & (ParityMask{1} << lowest_bit(b))) v ^= b;
  return v;
}

ParityMask permute_mask(ParityMask m, std::span<const std::size_t> perm) {
  ParityMask out = 0;
  for (std::size_t v = 0; v < perm.size(); ++v)
    if (m & (ParityMask{1} << v)) out |= ParityMask{1} << perm[v];
  return out;
}

Exponent permute_exponent(const Exponent& e, std::span<const std::size_t> perm) {
  Exponent out(e.size());
  for (std::size_t v = 0; v < e.size(); ++v) out.set(perm[v], e[v]);
  return out;
}

std::string mask_label(ParityMask m, std::size_t n) {
  std::string s = "(";
  for (std::size_t v = 0; v < n; ++v) s += (v ? "," : "") + std::to_string((m >> v) & 1u);
  return s + ")";
}

void check_involution(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw SymmetryError("permutation length does not match the variable count");
  for (std::size_t v = 0; v < n; ++v)
    if (perm[v] >= n || perm[perm[v]] != v) throw SymmetryError("permutation is not an involution");
}

}  // namespace

ParityMask parity_of(const Exponent& e) {
  ParityMask m = 0;
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v] & 1u) m |= ParityMask{1} << v;
  return m;
}

bool SignSymmetryGroup::contains(ParityMask flips) const {
  for (ParityMask c : checks)
    if (__builtin_popcount(c & flips) & 1) return false;
  return true;
}

ParityMask SignSymmetryGroup::class_of(const Exponent& m) const { return reduce(checks, parity_of(m)); }

SignSymmetryGroup detect_sign_symmetries(const Polynomial& p) {
  SignSymmetryGroup g;
  g.variables = p.context().size();
  for (const auto& [e, c] : p.terms()) insert_reduced(g.checks, parity_of(e));
  // Null space of the checks: one generator per free bit.
  ParityMask pivots = 0;
  for (ParityMask c : g.checks) pivots |= ParityMask{1} << lowest_bit(c);
  for (std::size_t f = 0; f < g.variables; ++f) {
    const ParityMask bit = ParityMask{1} << f;
    if (pivots & bit) continue;
    ParityMask s = bit;
    for (ParityMask c : g.checks)
      if (c & bit) s |= ParityMask{1} << lowest_bit(c);
    g.generators.push_back(s);
  }
  return g;
}

bool detect_swap(const Polynomial& p, std::span<const std::size_t> perm) {
  check_involution(perm, p.context().size());
  return permute_variables(p, perm) == p;
}

std::size_t SymmetryBlocking::total_dimension() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dimension() * b.multiplicity();
  return n;
}

SymmetryBlocking block_decompose(const GramProblem& problem, const SignSymmetryGroup& signs,
                                 const std::optional<std::vector<std::size_t>>& swap) {
  const auto& basis = problem.basis;
  const std::size_t n = basis.size(), nv = basis.context.size();
  {
    const auto fresh = detect_sign_symmetries(problem.target);
    for (ParityMask s : signs.generators)
      if (!fresh.contains(s)) throw SymmetryError("target is not invariant under flip " + mask_label(s, nv));
  }
  if (swap) {
    if (!detect_swap(problem.target, *swap)) throw SymmetryError("target is not invariant under the swap");
  }

  std::unordered_map<Exponent, std::size_t, ExponentHash> index;
  for (std::size_t i = 0; i < n; ++i) index[basis.monomials[i]] = i;
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!swap) {
      image[i] = i;
      continue;
    }
    auto it = index.find(permute_exponent(basis.monomials[i], *swap));
    if (it == index.end()) throw SymmetryError("basis is not closed under the swap");
    image[i] = it->second;
  }

  // Classes in order of first appearance in the basis.
  std::vector<ParityMask> order;
  std::map<ParityMask, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    const ParityMask c = signs.class_of(basis.monomials[i]);
    if (!members.count(c)) order.push_back(c);
    members[c].push_back(i);
  }

  SymmetryBlocking out;
  out.basis_size = n;
  out.group_order = signs.order() * (swap ? 2 : 1);
  std::map<ParityMask, bool> done;
  for (ParityMask c : order) {
    if (done[c]) continue;
    done[c] = true;
    const auto& idx = members[c];
    const ParityMask partner = swap ? signs.class_of(basis.monomials[image[idx.front()]]) : c;
    if (partner == c) {
      GramBlock plus, minus;
      plus.label = mask_label(c, nv) + (swap ? "+" : "");
      minus.label = mask_label(c, nv) + "-";
      plus.copies.resize(1);
      minus.copies.resize(1);
      for (std::size_t i : idx) {
        const std::size_t j = image[i];
        if (j == i) {
          plus.copies[0].push_back({{i, Rational(1)}});
        } else if (i < j) {
          plus.copies[0].push_back({{i, Rational(1)}, {j, Rational(1)}});
          minus.copies[0].push_back({{i, Rational(1)}, {j, Rational(-1)}});
        }
      }
      if (plus.dimension()) out.blocks.push_back(std::move(plus));
      if (minus.dimension()) out.blocks.push_back(std::move(minus));
    } else {
      done[partner] = true;
      GramBlock pair;
      pair.label = mask_label(c, nv) + "~" + mask_label(partner, nv);
      pair.copies.resize(2);
      for (std::size_t i : idx) {
        pair.copies[0].push_back({{i, Rational(1)}});
        pair.copies[1].push_back({{image[i], Rational(1)}});
      }
      if (members[partner].size() != idx.size()) throw SymmetryError("swapped classes differ in size");
      out.blocks.push_back(std::move(pair));
    }
  }
  return out;
}

Eigen::MatrixXd lift_solution(const std::vector<GramBlock>& blocks, std::size_t basis_size,
                              const std::vector<Eigen::MatrixXd>& block_matrices) {
  if (block_matrices.size() != blocks.size()) throw Error("lift: block count mismatch");
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(basis_size, basis_size);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& x = block_matrices[b];
    const std::size_t d = blocks[b].dimension();
    if (static_cast<std::size_t>(x.rows()) != d || static_cast<std::size_t>(x.cols()) != d)
      throw Error("lift: block " + std::to_string(b) + " has the wrong dimension");
    for (const auto& copy : blocks[b].copies)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          for (const auto& [p, a] : copy[k])
            for (const auto& [r, c] : copy[l]) q(p, r) += a.get_d() * c.get_d() * x(k, l);
  }
  return q;
}

RationalMatrix lift_solution(const std::vector<GramBlock>& blocks, std::size_t basis_size,
                             const std::vector<RationalMatrix>& block_matrices) {
  if (block_matrices.size() != blocks.size()) throw Error("lift: block count mismatch");
  std::vector<std::vector<Rational>> q(basis_size, std::vector<Rational>(basis_size));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& x = block_matrices[b];
    const std::size_t d = blocks[b].dimension();
    if (x.dimension() != d) throw Error("lift: block " + std::to_string(b) + " has the wrong dimension");
    for (const auto& copy : blocks[b].copies)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          if (x(k, l) == 0) continue;
          for (const auto& [p, a] : copy[k])
            for (const auto& [r, c] : copy[l]) q[p][r] += a * c * x(k, l);
        }
  }
  return RationalMatrix::from_rows(q);
}

void write_blocking_report(std::ostream& out, const SymmetryBlocking& blocking) {
  out << "block  multiplicity  dimension  label\n";
  for (std::size_t b = 0; b < blocking.blocks.size(); ++b) {
    const auto& blk = blocking.blocks[b];
    out << std::string(b + 1 < 10 ? 4 : 3, ' ') << b + 1 << "  " << std::string(12, ' ') << blk.multiplicity()
        << "  " << std::string(blk.dimension() < 10 ? 8 : 7, ' ') << blk.dimension() << "  " << blk.label << "\n";
  }
  out << "total " << blocking.total_dimension() << " of " << blocking.basis_size << ", group order "
      << blocking.group_order << "\n";
}

}  // namespace soscert
