#include "soscert/reduction.hpp"

#include <random>

#include "soscert/errors.hpp"

namespace soscert::reduction {

namespace {

constexpr const char* kLGrouped =
    "alpha^2*beta^2*(alpha-beta)^2 + (alpha-beta)^2*gamma^3*delta^3"
    " + ((alpha*delta)^2*(1-alpha*beta)*(1+alpha*beta-2*beta^2)"
    "    - (alpha*delta)*(beta*gamma)*(2-4*alpha*beta+beta*alpha^3+alpha*beta^3)"
    "    + (beta*gamma)^2*(1-alpha*beta)*(1+alpha*beta-2*alpha^2))"
    " + (gamma^2*beta*(1-alpha*beta)*(2*alpha-beta-alpha*beta^2)"
    "    - gamma*delta*(alpha^2+beta^2+2*alpha^3*beta^3-4*alpha^2*beta^2)"
    "    + delta^2*alpha*(1-alpha*beta)*(2*beta-alpha-alpha^2*beta))*gamma*delta";

constexpr const char* kLExpanded =
    "alpha^2*beta^2*(alpha-beta)^2"
    " + beta^2*(1-alpha*beta)*(1+alpha*beta-2*alpha^2)*gamma^2"
    " + alpha^2*(1-alpha*beta)*(1+alpha*beta-2*beta^2)*delta^2"
    " - alpha*beta*(2+alpha*beta^3-4*alpha*beta+beta*alpha^3)*gamma*delta"
    " + beta*(1-alpha*beta)*(2*alpha-beta-alpha*beta^2)*gamma^3*delta"
    " - (alpha^2+beta^2+2*alpha^3*beta^3-4*alpha^2*beta^2)*gamma^2*delta^2"
    " + alpha*(1-alpha*beta)*(2*beta-alpha-alpha^2*beta)*gamma*delta^3"
    " + (alpha-beta)^2*gamma^3*delta^3";

constexpr const char* kA =
    "-y^2*z^2 - y^4*z^2 + x^2*w^2 + 2*x^2*y^2*w^2 - 2*x^2*y^2*z^2 - x^2*y^4"
    " - 2*x^2*y^4*z^2 + x^4*w^2 + x^4*y^2 + 2*x^4*y^2*w^2";
constexpr const char* kB =
    "(1+x^2+y^2)*(-x^2*w^2 - x^2*z^2*w^2 - x^2*y^2*w^2 + x^2*y^2*z^2 + y^2*z^2 + y^2*z^2*w^2)";
constexpr const char* kC =
    "(x-y)*(x+y)*(-x^2*z^2*w^2 + x^2*y^2 + x^2*y^2*w^2 + x^2*y^2*z^2 - z^2*w^2 - y^2*z^2*w^2)";

// Pieces of the squared inequality over (R, S, alpha, beta, gamma, delta).
struct SquaredPieces {
  Polynomial n1, d1, n2, d2, n3, d3;
  Polynomial n2_printed, d2_printed;  // second factor as typeset
};

SquaredPieces squared_pieces() {
  const auto ctx = six_variable_context();
  auto p = [&](const char* s) { return parse(s, ctx); };
  return {
      p("alpha^2*(1-gamma^2)*R + gamma^2*(1-alpha^2)*S"),
      p("(1-gamma^2)*R + (1-alpha^2)*S"),
      p("beta^2*(1-delta^2)*R + delta^2*(1-beta^2)*S"),
      p("(1-delta^2)*R + (1-beta^2)*S"),
      p("R*alpha*beta*(1-gamma*delta) + S*gamma*delta*(1-alpha*beta)"),
      p("R*(1-gamma*delta) + S*(1-alpha*beta)"),
      p("beta^2*(1-delta^2)*R + gamma^2*(1-alpha^2)*S"),
      p("(1-delta^2)*R + (1-alpha^2)*S"),
  };
}

Polynomial factorization_rhs() {
  const auto ctx = six_variable_context();
  const Polynomial L = rebase(build_L(), ctx);
  const Polynomial M = rebase(build_M(), ctx);
  return parse("R*S*(R+S)", ctx) *
         (parse("(1-gamma*delta)*R", ctx) * L + parse("(1-alpha*beta)*S", ctx) * M);
}

}  // namespace

VariableContext greek_context() {
  static const VariableContext ctx({"alpha", "beta", "gamma", "delta"});
  return ctx;
}

VariableContext xyzw_context() {
  static const VariableContext ctx({"x", "y", "z", "w"});
  return ctx;
}

VariableContext six_variable_context() {
  static const VariableContext ctx({"R", "S", "alpha", "beta", "gamma", "delta"});
  return ctx;
}

Polynomial build_L_grouped() { return parse(kLGrouped, greek_context()); }
Polynomial build_L_expanded() { return parse(kLExpanded, greek_context()); }

Polynomial build_L() {
  Polynomial grouped = build_L_grouped();
  Polynomial expanded = build_L_expanded();
  if (!(grouped == expanded))
    throw Error("transcriptions of L disagree; difference " + to_string(grouped - expanded));
  return expanded;
}

Polynomial swap_pairs(const Polynomial& p) {
  const std::size_t perm[] = {2, 3, 0, 1};
  return permute_variables(p, perm);
}

Polynomial build_M() { return swap_pairs(build_L()); }

Rational squared_difference(std::span<const Rational> point) {
  const auto pieces = squared_pieces();
  auto ev = [&](const Polynomial& q) { return evaluate(q, point); };
  const Rational i1 = ev(pieces.n1) / ev(pieces.d1);
  const Rational i2 = ev(pieces.n2) / ev(pieces.d2);
  const Rational j = ev(pieces.n3) / ev(pieces.d3);
  return i1 * i2 - j * j;
}

EIdentityReport verify_E_identity(unsigned numeric_points, std::uint64_t seed) {
  EIdentityReport report;
  const auto pc = squared_pieces();
  const Polynomial rhs = factorization_rhs();

  // Numeric precheck: E * D against the right side at random rationals in (0,1).
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 96);
  report.numeric_precheck = true;
  const Polynomial denom = pc.d1 * pc.d2 * pc.d3 * pc.d3;
  for (unsigned k = 0; k < numeric_points; ++k) {
    std::vector<Rational> pt;
    for (int i = 0; i < 6; ++i) pt.emplace_back(num(rng), 97);
    for (auto& q : pt) q.canonicalize();
    const Rational dv = evaluate(denom, pt);
    if (dv == 0) continue;
    if (squared_difference(pt) * dv != evaluate(rhs, pt)) report.numeric_precheck = false;
  }

  // E * D = N1 N2 D3^2 - N3^2 D1 D2.
  const Polynomial lhs = pc.n1 * pc.n2 * pc.d3 * pc.d3 - pc.n3 * pc.n3 * pc.d1 * pc.d2;
  report.lhs_terms = lhs.term_count();
  report.rhs_terms = rhs.term_count();
  report.difference = lhs - rhs;
  report.holds = report.difference.is_zero();

  const Polynomial printed = pc.n1 * pc.n2_printed * pc.d3 * pc.d3 - pc.n3 * pc.n3 * pc.d1 * pc.d2_printed;
  report.displayed_form_holds = (printed == rhs);
  return report;
}

RationalFunctionSubstitution square_ratio_substitution() {
  const auto ctx = xyzw_context();
  std::vector<RationalFunction> images;
  for (const char* v : {"x", "y", "z", "w"}) {
    const std::string var(v);
    images.push_back({parse(var + "^2", ctx), parse("1+" + var + "^2", ctx)});
  }
  return RationalFunctionSubstitution(std::move(images));
}

Polynomial clearing_factor() {
  return parse("(1+x^2)^4*(1+y^2)^4*(1+z^2)^3*(1+w^2)^3", xyzw_context());
}

Polynomial build_P() {
  return substitute_and_clear(build_L(), square_ratio_substitution(), clearing_factor());
}

Polynomial weight_polynomial() { return parse("z^2 + w^2 + 2*z^2*w^2", xyzw_context()); }
Polynomial polynomial_A() { return parse(kA, xyzw_context()); }
Polynomial polynomial_B() { return parse(kB, xyzw_context()); }
Polynomial polynomial_C() { return parse(kC, xyzw_context()); }

Certificate published_certificate() {
  const auto ctx = xyzw_context();
  Certificate cert;
  cert.target = build_P();
  cert.terms.push_back({1, weight_polynomial(), polynomial_A()});
  cert.terms.push_back({1, Polynomial::constant(ctx, 1), polynomial_B()});
  cert.terms.push_back({1, Polynomial::constant(ctx, 1), polynomial_C()});
  return cert;
}

Polynomial FactoredPart::expand() const {
  const auto ctx = greek_context();
  Polynomial out = Polynomial::constant(ctx, 1);
  for (const auto& f : region_factors) out = out * f;
  for (const auto& f : squared_factors) out = out * f * f;
  return out;
}

Polynomial LDecomposition::sum() const { return L1.expand() + L2.expand() + L3.expand(); }

LDecomposition build_L_decomposition() {
  const auto ctx = greek_context();
  auto p = [&](const char* s) { return parse(s, ctx); };
  LDecomposition d;
  d.L1 = {"L1",
          {p("gamma+delta")},
          {p("-alpha^2*beta + alpha*beta^2 - alpha*delta + beta*gamma - beta*gamma*delta"
             " + alpha*delta*gamma - alpha*beta^2*gamma + alpha^2*beta*delta")}};
  d.L2 = {"L2", {p("1-gamma"), p("1-delta")}, {p("alpha*beta-1"), p("alpha*delta-beta*gamma")}};
  d.L3 = {"L3", {p("1-gamma"), p("1-delta")}, {p("alpha-beta"), p("alpha*beta-gamma*delta")}};
  return d;
}

}  // namespace soscert::reduction
