// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any line fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "random_poly.hpp"
#include "soscert/rationalize.hpp"
#include "soscert/gram.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/reduction.hpp"
#include "soscert/symmetry.hpp"
#include "soscert/verify.hpp"

using namespace soscert;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* name, double budget_s, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(budget_s) + " s budget";
  }
  failures += !o.pass;
  std::printf("%s %-3s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id, name, s, o.detail.c_str());
  std::fflush(stdout);
}

std::string join(const std::vector<int>& v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

// (i, j) -> weight and rhs for one constraint
using ConstraintShape = std::pair<std::map<std::pair<std::size_t, std::size_t>, Rational>, Rational>;

std::map<Exponent, ConstraintShape, GradedLexLess> shapes(const GramProblem& g) {
  std::map<Exponent, ConstraintShape, GradedLexLess> out;
  for (const auto& c : g.constraints) {
    auto& s = out[c.monomial];
    for (const auto& e : c.entries) s.first[{e.i, e.j}] = e.weight;
    s.second = c.rhs;
  }
  return out;
}

Outcome example1() {
  const VariableContext ctx({"x", "y"});
  const auto p = parse("2x^4 + 2x^3*y - x^2*y^2 + 5y^4", ctx);
  // u = (x^2, y^2, xy)
  const MonomialBasis basis{ctx, {Exponent{2, 0}, Exponent{0, 2}, Exponent{1, 1}}};
  const GramProblem g = build_gram_problem(p, basis);
  GramProblem want{p, basis, {}};
  want.constraints = {
      {Exponent{4, 0}, {{0, 0, 1}}, 2},          // q11 = 2
      {Exponent{3, 1}, {{0, 2, 2}}, 2},          // 2 q13 = 2
      {Exponent{2, 2}, {{0, 1, 2}, {2, 2, 1}}, -1},  // q33 + 2 q12 = -1
      {Exponent{1, 3}, {{1, 2, 2}}, 0},          // 2 q23 = 0
      {Exponent{0, 4}, {{1, 1, 1}}, 5},          // q22 = 5
  };
  const bool system = g.constraints.size() == 5 && shapes(g) == shapes(want);

  const RationalMatrix q = RationalMatrix::from_rows({{2, -3, 1}, {-3, 5, 0}, {1, 0, 5}});
  bool feasible = true;
  for (const auto& c : g.constraints) {
    Rational s;
    for (const auto& e : c.entries) s += e.weight * q(e.i, e.j);
    feasible = feasible && s == c.rhs;
  }
  const bool psd = is_psd_exact(q).psd;

  Certificate cert{p, {}};
  const auto one = Polynomial::constant(ctx, 1);
  cert.terms.push_back({Rational(1, 2), one, parse("2x^2 - 3y^2 + x*y", ctx)});
  cert.terms.push_back({Rational(1, 2), one, parse("y^2 + 3x*y", ctx)});
  const bool decomposition = verify_identity(p, cert).ok;

  std::ostringstream d;
  d << "five equalities " << (system ? "match" : "differ") << ", Q feasible " << feasible << ", Q PSD " << psd
    << ", decomposition verifies " << decomposition;
  return {system && feasible && psd && decomposition, d.str()};
}

Outcome p_statistics() {
  const auto p = reduction::build_P();
  const auto prof = degree_profile(p);
  const std::vector<int> want{12, 12, 8, 8};
  const bool ok = p.term_count() == 123 && prof.total == 20 && prof.per_variable == want;
  std::ostringstream d;
  d << p.term_count() << " terms (want 123), total degree " << prof.total << " (want 20), per-variable degrees "
    << join(prof.per_variable) << " (want " << join(want) << "); degree in {x,y} "
    << degree_in(p, std::vector<std::size_t>{0, 1}) << ", in {z,w} " << degree_in(p, std::vector<std::size_t>{2, 3});
  return {ok, d.str()};
}

Outcome published_certificate() {
  const auto r = verify_identity(reduction::build_P(), reduction::published_certificate());
  return {r.ok, r.ok ? "identity holds exactly" : r.message};
}

Outcome l_representation() {
  const auto parts = reduction::build_L_decomposition();
  const bool zero = (parts.sum() - reduction::build_L()).is_zero();
  const auto audit = verify_region_claim_L();
  std::ostringstream d;
  d << "L1+L2+L3-L " << (zero ? "= 0" : "!= 0") << ", region claim " << (audit.ok ? "holds" : "fails");
  return {zero && audit.ok, d.str()};
}

Outcome e_identity() {
  const auto r = reduction::verify_E_identity();
  std::ostringstream d;
  d << "identity " << (r.holds ? "holds" : "fails") << " (" << r.lhs_terms << " vs " << r.rhs_terms
    << " terms), numeric precheck " << r.numeric_precheck;
  return {r.holds && r.numeric_precheck, d.str()};
}

std::size_t g_basis = 0, g_constraints = 0;
bool c7 = false, c8 = false;

Outcome reduction_sizes() {
  const auto p = reduction::build_P();
  const auto basis = candidate_basis(p);
  const auto g = build_gram_problem(p, basis);
  g_basis = basis.size();
  g_constraints = g.constraints.size();
  std::ostringstream d;
  d << "basis " << g_basis << " (target 137), constraints " << g_constraints << " (target 1328)";
  if (g_basis == 137 && g_constraints == 1328) return {true, d.str()};
  // Documented deviation is acceptable only while symmetry and rediscovery hold.
  d << "; documented deviation, criteria 7 and 8 " << (c7 && c8 ? "hold" : "do not hold");
  return {c7 && c8, d.str()};
}

Outcome symmetry_accounting() {
  const auto p = reduction::build_P();
  const auto basis = candidate_basis(p);
  const auto problem = build_gram_problem(p, basis);
  const auto signs = detect_sign_symmetries(p);
  const auto swap = find_swap(p);
  const auto blocking = block_decompose(problem, signs, swap);
  std::ostringstream d;
  d << "sign group order " << signs.order() << " (want 16), with swap " << blocking.group_order
    << " (want 32), block total " << blocking.total_dimension() << " (want " << basis.size() << ")";
  c7 = signs.order() == 16 && swap && blocking.group_order == 32 && blocking.total_dimension() == basis.size() &&
       basis.size() == 137;
  return {c7, d.str()};
}

Outcome rediscovery() {
  const auto r = find_certificate(reduction::build_P());
  const bool exact = verify_identity(reduction::build_P(), r.certificate).ok;
  std::ostringstream d;
  d << r.certificate.terms.size() << " squares, denominator 2^" << r.denominator_bits << ", SDP residual "
    << r.sdp_residual << ", lifted residual " << r.lifted_residual << ", exact verification " << exact;
  c8 = r.verified && exact && r.sdp_residual <= 1e-9 && r.lifted_residual <= 1e-9;
  return {c8, d.str()};
}

Outcome ring_laws() {
  std::mt19937_64 rng(1);
  const VariableContext ctx({"x", "y", "z"});
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = testing::random_polynomial(rng, ctx, 3, 6);
    const auto q = testing::random_polynomial(rng, ctx, 3, 6);
    const auto r = testing::random_polynomial(rng, ctx, 3, 6);
    bool ok = (p + q) + r == p + (q + r);
    ok = ok && p * (q + r) == p * q + p * r;
    ok = ok && p * q == q * p;
    const auto pt = testing::random_point(rng, 3);
    ok = ok && evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt);
    bad += !ok;
  }
  return {bad == 0, std::to_string(bad) + " failures in 1000 cases"};
}

Outcome random_sos() {
  std::mt19937_64 rng(2024);
  int verified = 0;
  std::string first_error;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_sos(rng);
    try {
      const auto r = find_certificate(p);
      verified += r.verified && verify_identity(p, r.certificate).ok;
    } catch (const std::exception& e) {
      if (first_error.empty()) first_error = "; trial " + std::to_string(trial) + ": " + e.what();
    }
  }
  return {verified == 50, std::to_string(verified) + " of 50 verified" + first_error};
}

Outcome p_nonnegative() {
  const auto r = reduction::sample_nonnegativity(reduction::build_P(), 10000, 42);
  std::ostringstream d;
  d << r.count << " points, min relative value " << r.min_relative_value;
  return {r.count == 10000 && r.min_relative_value >= -1e-9, d.str()};
}

Outcome inequality_sampling() {
  const auto t = reduction::sample_arcsine(100000, 42);
  const auto l = reduction::sample_ratio(100000, 43);
  std::ostringstream d;
  d << "arcsine inequality min slack " << t.min_slack << " over " << t.count << ", ratio inequality min slack " << l.min_slack
    << " over " << l.count;
  return {t.count == 100000 && l.count == 100000 && t.min_slack >= -1e-12 && l.min_slack >= -1e-12, d.str()};
}

Outcome block_profile() {
  const auto p = reduction::build_P();
  const auto basis = candidate_basis(p);
  const auto blocking =
      block_decompose(build_gram_problem(p, basis), detect_sign_symmetries(p), find_swap(p));
  std::vector<int> singles, doubles;
  for (const auto& b : blocking.blocks)
    (b.multiplicity() == 1 ? singles : doubles).push_back(static_cast<int>(b.dimension()));
  std::ostringstream d;
  d << "ours " << join(singles) << " | " << join(doubles) << " doubled; reference (9,6,6,4,8,5,3,2) | "
    << "(11,7,8,7,8,6) doubled; reported for comparison, not asserted";
  return {true, d.str()};
}

}  // namespace

int main() {
  criterion("1", "example 1 reproduction", 1, example1);
  criterion("2", "P reconstruction statistics", 10, p_statistics);
  criterion("3", "published certificate", 10, published_certificate);
  criterion("4", "L representation", 1, l_representation);
  criterion("5", "E factorization identity", 60, e_identity);
  // 6 depends on 7 and 8 when the sizes deviate.
  criterion("7", "symmetry accounting", 60, symmetry_accounting);
  criterion("8", "end-to-end rediscovery", 600, rediscovery);
  criterion("6", "sparse reduction sizes", 60, reduction_sizes);
  criterion("9a", "ring laws, 1000 cases", 60, ring_laws);
  criterion("9b", "50 random sums of squares", 600, random_sos);
  criterion("9c", "P nonnegative at 1e4 points", 60, p_nonnegative);
  criterion("9d", "inequality sampling, 1e5 points each", 600, inequality_sampling);
  criterion("10", "block profile comparison", 60, block_profile);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
