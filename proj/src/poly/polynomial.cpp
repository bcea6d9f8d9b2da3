#include "soscert/polynomial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "soscert/errors.hpp"

namespace soscert {

namespace {

void require_same_context(const Polynomial& p, const Polynomial& q) {
  if (!(p.context() == q.context())) throw ContextMismatch("polynomials use different variable lists");
}

using Accumulator = std::unordered_map<Exponent, Rational, ExponentHash>;

std::vector<Polynomial::Term> drain(Accumulator& acc) {
  std::vector<Polynomial::Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) out.emplace_back(e, std::move(c));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return GradedLexLess{}(a.first, b.first); });
  return out;
}

}  // namespace

VariableContext::VariableContext(std::vector<std::string> names) {
  if (names.size() > kMaxVariables)
    throw Error("too many variables (max " + std::to_string(kMaxVariables) + ")");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error("empty variable name");
    if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::size_t VariableContext::index_of(std::string_view name) const noexcept {
  auto it = std::find(names_->begin(), names_->end(), name);
  return static_cast<std::size_t>(it - names_->begin());
}

Polynomial Polynomial::constant(const VariableContext& ctx, const Rational& c) {
  return monomial(ctx, Exponent(ctx.size()), c);
}

Polynomial Polynomial::variable(const VariableContext& ctx, std::size_t index) {
  if (index >= ctx.size()) throw Error("variable index out of range");
  Exponent e(ctx.size());
  e.set(index, 1);
  return monomial(ctx, e);
}

Polynomial Polynomial::variable(const VariableContext& ctx, std::string_view name) {
  const auto i = ctx.index_of(name);
  if (i == ctx.size()) throw Error("unknown variable '" + std::string(name) + "'");
  return variable(ctx, i);
}

Polynomial Polynomial::monomial(const VariableContext& ctx, const Exponent& e, const Rational& c) {
  if (e.size() != ctx.size()) throw ContextMismatch("exponent length does not match context");
  Polynomial p(ctx);
  if (c != 0) p.terms_.emplace_back(e, c);
  return p;
}

Polynomial Polynomial::from_terms(const VariableContext& ctx, std::vector<Term> terms) {
  Accumulator acc;
  for (auto& [e, c] : terms) {
    if (e.size() != ctx.size()) throw ContextMismatch("exponent length does not match context");
    acc[e] += c;
  }
  Polynomial p(ctx);
  p.terms_ = drain(acc);
  return p;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return GradedLexLess{}(t.first, x); });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  require_same_context(p, q);
  Polynomial out(p.ctx_);
  out.terms_.reserve(p.terms_.size() + q.terms_.size());
  auto a = p.terms_.begin(), b = q.terms_.begin();
  const GradedLexLess less;
  while (a != p.terms_.end() || b != q.terms_.end()) {
    if (b == q.terms_.end() || (a != p.terms_.end() && less(a->first, b->first))) {
      out.terms_.push_back(*a++);
    } else if (a == p.terms_.end() || less(b->first, a->first)) {
      out.terms_.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) out.terms_.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  require_same_context(p, q);
  Accumulator acc;
  acc.reserve(p.terms_.size() * q.terms_.size());
  for (const auto& [ea, ca] : p.terms_)
    for (const auto& [eb, cb] : q.terms_) acc[ea + eb] += ca * cb;
  Polynomial out(p.ctx_);
  out.terms_ = drain(acc);
  return out;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial out = p;
  out *= c;
  return out;
}

bool operator==(const Polynomial& p, const Polynomial& q) {
  return p.ctx_ == q.ctx_ && p.terms_ == q.terms_;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(p.context(), 1);
  Polynomial base = p;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  const auto n = p.context().size();
  if (point.size() != n) throw MissingValue("evaluation point needs " + std::to_string(n) + " values");
  std::vector<std::vector<Rational>> powers(n, std::vector<Rational>{1});
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < n; ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
      term *= pw[e[i]];
    }
    sum += term;
  }
  return sum;
}

double evaluate_double(const Polynomial& p, std::span<const double> point) {
  const auto n = p.context().size();
  if (point.size() != n) throw MissingValue("evaluation point needs " + std::to_string(n) + " values");
  double sum = 0;
  for (const auto& [e, c] : p.terms()) {
    double term = c.get_d();
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    sum += term;
  }
  return sum;
}

Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor) {
  require_same_context(dividend, divisor);
  if (divisor.is_zero()) throw Error("division by the zero polynomial");
  const auto& ctx = dividend.context();
  const auto& [lead_e, lead_c] = divisor.leading_term();
  std::map<Exponent, Rational, GradedLexLess> rest;
  for (const auto& [e, c] : dividend.terms()) rest.emplace(e, c);
  std::vector<Polynomial::Term> quotient, remainder;
  while (!rest.empty()) {
    auto top = std::prev(rest.end());
    const Exponent e = top->first;
    const Rational c = top->second;
    bool divisible = true;
    Exponent shift(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (e[i] < lead_e[i]) {
        divisible = false;
        break;
      }
      shift.set(i, e[i] - lead_e[i]);
    }
    if (!divisible) {
      remainder.emplace_back(e, c);
      rest.erase(top);
      continue;
    }
    const Rational factor = c / lead_c;
    quotient.emplace_back(shift, factor);
    for (const auto& [de, dc] : divisor.terms()) {
      auto [it, inserted] = rest.try_emplace(shift + de, 0);
      it->second -= factor * dc;
      if (it->second == 0) rest.erase(it);
    }
  }
  if (!remainder.empty()) {
    auto r = Polynomial::from_terms(ctx, std::move(remainder));
    throw ResidualDenominator("division is not exact; remainder " + to_string(r) + " over divisor " +
                              to_string(divisor));
  }
  return Polynomial::from_terms(ctx, std::move(quotient));
}

Polynomial rebase(const Polynomial& p, const VariableContext& target) {
  const auto& src = p.context();
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    map[i] = target.index_of(src.name(i));
    if (map[i] == target.size()) {
      bool used = std::any_of(p.terms().begin(), p.terms().end(),
                              [i](const auto& t) { return t.first[i] != 0; });
      if (used) throw ContextMismatch("variable '" + src.name(i) + "' missing from target context");
    }
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    Exponent out(target.size());
    for (std::size_t i = 0; i < src.size(); ++i)
      if (e[i] != 0) out.set(map[i], e[i]);
    terms.emplace_back(out, c);
  }
  return Polynomial::from_terms(target, std::move(terms));
}

Polynomial permute_variables(const Polynomial& p, std::span<const std::size_t> perm) {
  const auto n = p.context().size();
  if (perm.size() != n) throw ContextMismatch("permutation length does not match context");
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    Exponent out(n);
    for (std::size_t i = 0; i < n; ++i) out.set(perm[i], out[perm[i]] + e[i]);
    terms.emplace_back(out, c);
  }
  return Polynomial::from_terms(p.context(), std::move(terms));
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images) {
  const auto n = p.context().size();
  if (images.size() != n) throw MissingValue("composition needs one image per variable");
  const VariableContext& target = images.front().context();
  std::vector<std::vector<Polynomial>> powers(n);
  for (std::size_t i = 0; i < n; ++i) powers[i].push_back(Polynomial::constant(target, 1));
  Polynomial sum(target);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < n; ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
      if (e[i] > 0) term = term * pw[e[i]];
    }
    sum = sum + term;
  }
  return sum;
}

RationalFunctionSubstitution::RationalFunctionSubstitution(std::vector<RationalFunction> images)
    : images_(std::move(images)) {
  if (images_.empty()) throw Error("empty substitution");
  const auto& ctx = images_.front().numerator.context();
  for (const auto& f : images_) {
    if (!(f.numerator.context() == ctx) || !(f.denominator.context() == ctx))
      throw ContextMismatch("substitution images use different variable lists");
    if (f.denominator.is_zero()) throw Error("substitution denominator is the zero polynomial");
  }
}

Polynomial substitute_and_clear(const Polynomial& p, const RationalFunctionSubstitution& subst,
                                const Polynomial& clearing_factor) {
  const auto n = p.context().size();
  const auto& images = subst.images();
  if (images.size() != n) throw MissingValue("substitution needs one image per variable");
  const VariableContext& target = subst.target();
  if (!(clearing_factor.context() == target))
    throw ContextMismatch("clearing factor is not over the substitution's target variables");

  // p(N_i/D_i) = sum_e c_e prod N_i^e_i D_i^(k_i - e_i) / prod D_i^k_i with k_i = deg_i p.
  const auto profile = degree_profile(p);
  std::vector<std::vector<Polynomial>> num_pows(n), den_pows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int k = std::max(profile.per_variable[i], 0);
    num_pows[i].push_back(Polynomial::constant(target, 1));
    den_pows[i].push_back(Polynomial::constant(target, 1));
    for (int j = 0; j < k; ++j) {
      num_pows[i].push_back(num_pows[i].back() * images[i].numerator);
      den_pows[i].push_back(den_pows[i].back() * images[i].denominator);
    }
  }
  Polynomial numerator(target);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<unsigned>(profile.per_variable[i]);
      if (e[i] > 0) term = term * num_pows[i][e[i]];
      if (k - e[i] > 0) term = term * den_pows[i][k - e[i]];
    }
    numerator = numerator + term;
  }
  Polynomial denominator = Polynomial::constant(target, 1);
  for (std::size_t i = 0; i < n; ++i) denominator = denominator * den_pows[i].back();

  if (denominator == clearing_factor) return numerator;
  try {
    return divide_exact(numerator * clearing_factor, denominator);
  } catch (const ResidualDenominator& e) {
    throw ResidualDenominator(std::string("clearing factor insufficient: ") + e.what());
  }
}

DegreeProfile degree_profile(const Polynomial& p) {
  DegreeProfile out;
  const auto n = p.context().size();
  out.per_variable.assign(n, p.is_zero() ? kZeroPolynomialDegree : 0);
  for (const auto& [e, c] : p.terms()) {
    out.total = std::max(out.total, static_cast<int>(e.total()));
    for (std::size_t i = 0; i < n; ++i)
      out.per_variable[i] = std::max(out.per_variable[i], static_cast<int>(e[i]));
  }
  return out;
}

int degree_in(const Polynomial& p, std::span<const std::size_t> variables) {
  int best = kZeroPolynomialDegree;
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (auto v : variables) d += static_cast<int>(e[v]);
    best = std::max(best, d);
  }
  return best;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  const auto& ctx = p.context();
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    const bool constant = e.is_zero();
    if (constant || mag != 1) {
      out << mag.get_str();
      if (!constant) out << '*';
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_factor) out << '*';
      first_factor = false;
      out << ctx.name(i);
      if (e[i] > 1) out << '^' << e[i];
    }
  }
  return out.str();
}

}  // namespace soscert
