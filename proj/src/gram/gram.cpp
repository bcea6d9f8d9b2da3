#include "soscert/gram.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "soscert/errors.hpp"

namespace soscert {

namespace {

struct DescendingGrlex {
  bool operator()(const Exponent& a, const Exponent& b) const { return GradedLexLess{}(b, a); }
};

std::string monomial_text(const VariableContext& ctx, const Exponent& e) {
  return to_string(Polynomial::monomial(ctx, e));
}

Exponent monomial_from_text(const std::string& text, const VariableContext& ctx, std::size_t lineno) {
  const Polynomial m = parse(text, ctx);
  if (m.term_count() != 1 || m.terms()[0].second != 1)
    throw FormatError("line " + std::to_string(lineno) + ": expected a monomial, got '" + text + "'");
  return m.terms()[0].first;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (!line.empty() && line[0] != '#') return true;
  }
  return false;
}

std::string field(std::istream& in, std::size_t& lineno, const std::string& key) {
  std::string line;
  if (!next_line(in, line, lineno)) throw FormatError("missing '" + key + ":' line");
  if (line.rfind(key + ":", 0) != 0)
    throw FormatError("line " + std::to_string(lineno) + ": expected '" + key + ":'");
  return trim(line.substr(key.size() + 1));
}

std::size_t count_field(std::istream& in, std::size_t& lineno, const std::string& key) {
  const std::string v = field(in, lineno, key);
  try {
    return std::stoul(v);
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(lineno) + ": bad count '" + v + "'");
  }
}

}  // namespace

GramProblem build_gram_problem(const Polynomial& p, const MonomialBasis& basis) {
  if (!(p.context() == basis.context)) throw ContextMismatch("basis and polynomial use different variables");
  if (basis.monomials.empty()) throw InfeasibleBasis("empty basis");
  std::map<Exponent, std::vector<GramEntry>, DescendingGrlex> products;
  const std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      products[basis.monomials[i] + basis.monomials[j]].push_back({i, j, i == j ? 1 : 2});
  for (const auto& [e, c] : p.terms())
    if (!products.count(e))
      throw InfeasibleBasis("monomial " + monomial_text(p.context(), e) +
                            " of the target is not a product of two basis monomials");
  GramProblem out{p, basis, {}};
  out.constraints.reserve(products.size());
  for (auto& [e, entries] : products) out.constraints.push_back({e, std::move(entries), p.coefficient(e)});
  return out;
}

Polynomial gram_expand(const MonomialBasis& basis, const RationalMatrix& q) {
  if (q.dimension() != basis.size()) throw Error("Gram matrix dimension does not match the basis");
  std::vector<Polynomial::Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (q(i, j) != 0) terms.emplace_back(basis.monomials[i] + basis.monomials[j], q(i, j));
  return Polynomial::from_terms(basis.context, std::move(terms));
}

void write_gram_problem(std::ostream& out, const GramProblem& problem) {
  const auto& ctx = problem.basis.context;
  out << "# soscert gram problem\nvariables:";
  for (const auto& n : ctx.names()) out << ' ' << n;
  out << "\ntarget: " << to_string(problem.target) << "\n";
  out << "basis: " << problem.basis.size() << "\n";
  for (const auto& m : problem.basis.monomials) out << monomial_text(ctx, m) << "\n";
  out << "constraints: " << problem.constraints.size() << "\n";
  for (const auto& c : problem.constraints) {
    out << monomial_text(ctx, c.monomial) << " : [";
    for (std::size_t k = 0; k < c.entries.size(); ++k) {
      const auto& e = c.entries[k];
      out << (k ? ", " : "") << '(' << e.i << ',' << e.j << ',' << to_string(e.weight) << ')';
    }
    out << "] = " << to_string(c.rhs) << "\n";
  }
}

std::string gram_problem_to_string(const GramProblem& problem) {
  std::ostringstream s;
  write_gram_problem(s, problem);
  return s.str();
}

GramProblem read_gram_problem(std::istream& in) {
  std::size_t lineno = 0;
  std::istringstream names_in(field(in, lineno, "variables"));
  std::vector<std::string> names;
  for (std::string n; names_in >> n;) names.push_back(n);
  const VariableContext ctx(std::move(names));
  GramProblem out;
  out.target = parse(field(in, lineno, "target"), ctx);
  out.basis.context = ctx;
  const std::size_t nb = count_field(in, lineno, "basis");
  std::string line;
  for (std::size_t k = 0; k < nb; ++k) {
    if (!next_line(in, line, lineno)) throw FormatError("basis truncated");
    out.basis.monomials.push_back(monomial_from_text(line, ctx, lineno));
  }
  const std::size_t nc = count_field(in, lineno, "constraints");
  for (std::size_t k = 0; k < nc; ++k) {
    if (!next_line(in, line, lineno)) throw FormatError("constraints truncated");
    const auto colon = line.find(':'), open = line.find('['), close = line.find(']');
    const auto eq = line.find('=', close == std::string::npos ? 0 : close);
    if (colon == std::string::npos || open == std::string::npos || close == std::string::npos ||
        eq == std::string::npos || !(colon < open && open < close))
      throw FormatError("line " + std::to_string(lineno) + ": malformed constraint");
    GramConstraint c;
    c.monomial = monomial_from_text(trim(line.substr(0, colon)), ctx, lineno);
    c.rhs = parse_rational(trim(line.substr(eq + 1)));
    const std::string body = line.substr(open + 1, close - open - 1);
    for (std::size_t pos = body.find('('); pos != std::string::npos; pos = body.find('(', pos + 1)) {
      const auto end = body.find(')', pos);
      if (end == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": unclosed entry");
      std::istringstream entry(body.substr(pos + 1, end - pos - 1));
      std::string i, j, w;
      if (!std::getline(entry, i, ',') || !std::getline(entry, j, ',') || !std::getline(entry, w))
        throw FormatError("line " + std::to_string(lineno) + ": entry needs (i,j,c)");
      try {
        c.entries.push_back({std::stoul(i), std::stoul(j), parse_rational(trim(w))});
      } catch (const std::invalid_argument&) {
        throw FormatError("line " + std::to_string(lineno) + ": bad index");
      }
      if (c.entries.back().i > c.entries.back().j || c.entries.back().j >= nb)
        throw FormatError("line " + std::to_string(lineno) + ": index out of range");
    }
    out.constraints.push_back(std::move(c));
  }
  return out;
}

// ---- block form ------------------------------------------------------------

std::size_t BlockGramSystem::variable_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dimension() * (b.dimension() + 1) / 2;
  return n;
}

std::size_t BlockGramSystem::column(std::size_t block, std::size_t k, std::size_t l) const {
  std::size_t offset = 0;
  for (std::size_t b = 0; b < block; ++b) offset += blocks[b].dimension() * (blocks[b].dimension() + 1) / 2;
  const std::size_t d = blocks[block].dimension();
  return offset + k * d - k * (k - 1) / 2 + (l - k);
}

GramBlock identity_block(std::size_t n) {
  GramBlock b;
  b.label = "all";
  b.copies.resize(1);
  for (std::size_t i = 0; i < n; ++i) b.copies[0].push_back({{i, Rational(1)}});
  return b;
}

BlockGramSystem assemble_blocks(const Polynomial& target, const MonomialBasis& basis,
                                std::vector<GramBlock> blocks) {
  if (!(target.context() == basis.context)) throw ContextMismatch("basis and polynomial use different variables");
  struct Key {
    std::size_t b, k, l;
    bool operator<(const Key& o) const { return std::tie(b, k, l) < std::tie(o.b, o.k, o.l); }
  };
  std::map<Exponent, std::map<Key, Rational>, DescendingGrlex> rows;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (const auto& copy : blocks[b].copies) {
      const std::size_t d = copy.size();
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k; l < d; ++l)
          for (const auto& [p, a] : copy[k])
            for (const auto& [q, c] : copy[l]) {
              Rational v = a * c;
              if (k != l) v *= 2;
              rows[basis.monomials[p] + basis.monomials[q]][{b, k, l}] += v;
            }
    }
  }
  BlockGramSystem sys{target, basis, std::move(blocks), {}};
  for (const auto& [e, c] : target.terms()) rows[e];  // keep every target monomial
  for (auto& [mono, entries] : rows) {
    BlockConstraint c{mono, {}, target.coefficient(mono)};
    for (auto& [key, v] : entries)
      if (v != 0) c.entries.push_back({key.b, key.k, key.l, std::move(v)});
    if (c.entries.empty() && c.rhs != 0)
      throw InfeasibleBasis("monomial " + monomial_text(basis.context, mono) +
                            " of the target is not reachable from the block coordinates");
    if (!c.entries.empty()) sys.constraints.push_back(std::move(c));
  }
  return sys;
}

Polynomial block_coordinate(const BlockGramSystem& sys, std::size_t block, std::size_t copy, std::size_t k) {
  std::vector<Polynomial::Term> terms;
  for (const auto& [p, a] : sys.blocks.at(block).copies.at(copy).at(k))
    terms.emplace_back(sys.basis.monomials[p], a);
  return Polynomial::from_terms(sys.basis.context, std::move(terms));
}

}  // namespace soscert
