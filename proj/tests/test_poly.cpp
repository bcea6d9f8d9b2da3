#include "doctest.h"

#include <random>

#include "random_poly.hpp"
#include "soscert/errors.hpp"
#include "soscert/polynomial.hpp"

using namespace soscert;

namespace {
const VariableContext xy({"x", "y"});
Polynomial P(const char* s) { return parse(s, xy); }
}  // namespace

TEST_CASE("parse") {
  const Polynomial f = P("2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4");
  CHECK(f.term_count() == 4);
  CHECK(f.coefficient(Exponent{2, 2}) == -1);
  CHECK(to_string(f) == "2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4");
  CHECK(parse("0", {"x"}).is_zero());
  CHECK(P("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
  CHECK(P("3/4 x*y").coefficient(Exponent{1, 1}) == Rational(3, 4));
  CHECK(P(" - ( x - y ) ^ 3 ") == P("y^3 - 3*x*y^2 + 3*x^2*y - x^3"));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(P("x + q"), ParseError);
  CHECK_THROWS_WITH(P("x + q"), doctest::Contains("unknown variable"));
  CHECK_THROWS_AS(P("x^1.5"), ParseError);
  CHECK_THROWS_AS(P("x^y"), ParseError);
  CHECK_THROWS_AS(P("(x+y"), ParseError);
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("x/0"), ParseError);
  try {
    P("x + * y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("ring operations") {
  CHECK((P("x^2") + P("-x^2")).is_zero());
  CHECK(mul(P("x+y"), P("x-y")) == P("x^2-y^2"));
  const Polynomial q = pow(parse("1+x^2", {"x"}), 4);
  CHECK(q.term_count() == 5);
  CHECK(q == parse("1 + 4*x^2 + 6*x^4 + 4*x^6 + x^8", {"x"}));
  CHECK(pow(P("x+y"), 0) == Polynomial::constant(xy, 1));
  CHECK_THROWS_AS(P("x") + parse("x", {"x"}), ContextMismatch);
}

TEST_CASE("evaluate") {
  const Polynomial f = P("2*x^4 + 2*x^3*y - x^2*y^2 + 5*y^4");
  const Rational one[] = {1, 1};
  CHECK(evaluate(f, one) == 8);
  const Rational zero[] = {0, 0};
  CHECK(evaluate(P("x*y + 7/3"), zero) == Rational(7, 3));
  const Rational short_pt[] = {1};
  CHECK_THROWS_AS(evaluate(f, short_pt), MissingValue);
}

TEST_CASE("degree profile") {
  auto d = degree_profile(P("x^3*y^5"));
  CHECK(d.total == 8);
  CHECK(d.per_variable == std::vector<int>{3, 5});
  CHECK(degree_profile(Polynomial::constant(xy, 5)).total == 0);
  CHECK(degree_profile(Polynomial(xy)).total == kZeroPolynomialDegree);
}

TEST_CASE("substitute_and_clear") {
  const VariableContext a({"alpha"}), x({"x"});
  RationalFunctionSubstitution s({{parse("x^2", x), parse("1+x^2", x)}});
  CHECK(substitute_and_clear(parse("alpha", a), s, parse("1+x^2", x)) == parse("x^2", x));
  CHECK_THROWS_AS(substitute_and_clear(parse("alpha^2", a), s, parse("1+x^2", x)),
                  ResidualDenominator);
}

TEST_CASE("substitute_and_clear agrees with rational evaluation") {
  std::mt19937_64 rng(17);
  const VariableContext ab({"a", "b"});
  RationalFunctionSubstitution s({{P("x^2"), P("1+x^2")}, {P("y^2"), P("1+y^2")}});
  const Polynomial clear = P("(1+x^2)^2*(1+y^2)^2");
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = testing::random_polynomial(rng, ab, 2, 5);
    const Polynomial cleared = substitute_and_clear(p, s, clear);
    for (int k = 0; k < 20; ++k) {
      const auto pt = testing::random_point(rng, 2);
      std::vector<Rational> img;
      for (const auto& v : pt) img.push_back(v * v / (1 + v * v));
      CHECK(evaluate(cleared, pt) == evaluate(p, img) * evaluate(clear, pt));
    }
  }
}

TEST_CASE("rebase and permute") {
  const VariableContext yx({"y", "x"});
  const Polynomial p = P("x^2*y + 3*y");
  const Polynomial q = rebase(p, yx);
  CHECK(q == parse("x^2*y + 3*y", yx));
  const std::size_t swap[] = {1, 0};
  CHECK(permute_variables(p, swap) == P("y^2*x + 3*x"));
}

TEST_CASE("divide_exact") {
  CHECK(divide_exact(P("x^2-y^2"), P("x-y")) == P("x+y"));
  CHECK_THROWS_AS(divide_exact(P("x^2+y"), P("x-y")), ResidualDenominator);
}

TEST_CASE("ring laws and evaluation homomorphism on random polynomials") {
  std::mt19937_64 rng(2024);
  const VariableContext ctx({"x", "y", "z"});
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_polynomial(rng, ctx, 4, 6);
    const auto q = testing::random_polynomial(rng, ctx, 4, 6);
    const auto r = testing::random_polynomial(rng, ctx, 4, 6);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    const auto pt = testing::random_point(rng, 3);
    CHECK(evaluate(p * q, pt) == evaluate(p, pt) * evaluate(q, pt));
    CHECK(parse(to_string(p), ctx) == p);
  }
}
