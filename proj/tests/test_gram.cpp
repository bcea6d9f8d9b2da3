#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "random_poly.hpp"
#include "soscert/errors.hpp"
#include "soscert/gram.hpp"
#include "soscert/reduction.hpp"

using namespace soscert;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Polynomial example1() { return parse("2x^4 + 2x^3*y - x^2*y^2 + 5y^4", kXY); }

std::vector<std::string> basis_text(const MonomialBasis& b) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back(to_string(b.polynomial(i)));
  return out;
}

}  // namespace

TEST_CASE("convex hull membership") {
  const std::vector<Exponent> tri{{0, 0}, {4, 0}, {0, 4}};
  CHECK(in_convex_hull({1, 1}, tri));
  CHECK(in_convex_hull({2, 2}, tri));
  CHECK(in_convex_hull({4, 0}, tri));
  CHECK_FALSE(in_convex_hull({3, 2}, tri));
  CHECK_FALSE(in_convex_hull({5, 0}, tri));
  const std::vector<Exponent> seg{{2, 0}, {0, 2}};
  CHECK(in_convex_hull({1, 1}, seg));
  CHECK_FALSE(in_convex_hull({1, 0}, seg));
}

TEST_CASE("example 1 basis and constraints") {
  const Polynomial p = example1();
  const MonomialBasis b = candidate_basis(p);
  CHECK(basis_text(b) == std::vector<std::string>{"x^2", "x*y", "y^2"});

  const GramProblem g = build_gram_problem(p, b);
  REQUIRE(g.constraints.size() == 5);
  // indices: 0 = x^2, 1 = xy, 2 = y^2
  struct Want {
    Exponent mono;
    std::vector<std::tuple<std::size_t, std::size_t, int>> entries;
    int rhs;
  };
  const std::vector<Want> want{
      {{4, 0}, {{0, 0, 1}}, 2},
      {{3, 1}, {{0, 1, 2}}, 2},
      {{2, 2}, {{0, 2, 2}, {1, 1, 1}}, -1},
      {{1, 3}, {{1, 2, 2}}, 0},
      {{0, 4}, {{2, 2, 1}}, 5},
  };
  for (std::size_t k = 0; k < want.size(); ++k) {
    CAPTURE(k);
    const auto& c = g.constraints[k];
    CHECK(c.monomial == want[k].mono);
    CHECK(c.rhs == want[k].rhs);
    REQUIRE(c.entries.size() == want[k].entries.size());
    for (std::size_t e = 0; e < c.entries.size(); ++e) {
      CHECK(c.entries[e].i == std::get<0>(want[k].entries[e]));
      CHECK(c.entries[e].j == std::get<1>(want[k].entries[e]));
      CHECK(c.entries[e].weight == std::get<2>(want[k].entries[e]));
    }
  }

  const RationalMatrix q = RationalMatrix::from_rows({{2, 1, -3}, {1, 5, 0}, {-3, 0, 5}});
  CHECK(gram_expand(b, q) == p);
}

TEST_CASE("small bases") {
  CHECK(basis_text(candidate_basis(parse("x^2", {"x"}))) == std::vector<std::string>{"x"});
  CHECK(basis_text(candidate_basis(parse("x^2 + 1", {"x"}))) == std::vector<std::string>{"x", "1"});
  CHECK_THROWS_AS(candidate_basis(parse("x", {"x"})), NotSosCandidate);
  CHECK_THROWS_AS(candidate_basis(parse("x^3 + 1", {"x"})), NotSosCandidate);
  // Motzkin: 1, xy, x^2 y, x y^2
  const auto motzkin = candidate_basis(parse("x^4*y^2 + x^2*y^4 - 3x^2*y^2 + 1", kXY));
  CHECK(motzkin.size() == 4);
  // a corner monomial whose square is missing gets pruned
  const auto pruned = candidate_basis(parse("x^2*y^2 + 1", kXY));
  CHECK(basis_text(pruned) == std::vector<std::string>{"x*y", "1"});
}

TEST_CASE("full basis counts") {
  const VariableContext ctx({"x", "y", "z"});
  CHECK(full_basis(ctx, 0).size() == 1);
  CHECK(full_basis(ctx, 2).size() == 10);
  CHECK(full_basis(VariableContext({"x", "y", "z", "w"}), 10).size() == 1001);
}

TEST_CASE("P sparse sizes") {
  const Polynomial P = reduction::build_P();
  const MonomialBasis b = candidate_basis(P);
  CHECK(b.size() == 137);
  const GramProblem g = build_gram_problem(P, b);
  // One per distinct product of basis monomials.
  std::set<Exponent, GradedLexLess> sums;
  for (const auto& m : b.monomials)
    for (const auto& n : b.monomials) sums.insert(m + n);
  CHECK(g.constraints.size() == sums.size());
  CHECK(g.constraints.size() == 1329);
  // the published square roots only use basis monomials
  for (const auto& t : reduction::published_certificate().terms)
    for (const auto& [e, c] : t.root.terms()) {
      const Polynomial mult = t.multiplier;
      for (const auto& [me, mc] : mult.terms()) CHECK(b.index_of(e + me.half()).has_value());
    }
}

TEST_CASE("constraints partition the Gram entries") {
  std::mt19937_64 rng(11);
  const VariableContext ctx({"x", "y", "z"});
  for (int trial = 0; trial < 30; ++trial) {
    const Polynomial r = testing::random_polynomial(rng, ctx, 3, 4);
    const Polynomial p = r * r + Polynomial::constant(ctx, 1);
    const MonomialBasis b = candidate_basis(p);
    const GramProblem g = build_gram_problem(p, b);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& c : g.constraints) {
      CHECK(c.rhs == p.coefficient(c.monomial));
      for (const auto& e : c.entries) {
        CHECK(e.i <= e.j);
        CHECK(e.weight == (e.i == e.j ? 1 : 2));
        CHECK(b.monomials[e.i] + b.monomials[e.j] == c.monomial);
        CHECK(seen.insert({e.i, e.j}).second);
      }
    }
    CHECK(seen.size() == b.size() * (b.size() + 1) / 2);
  }
}

TEST_CASE("support outside the basis products is infeasible") {
  const Polynomial p = parse("x^2 + y^2", kXY);
  MonomialBasis b{p.context(), {Exponent{1, 0}}};
  CHECK_THROWS_AS(build_gram_problem(p, b), InfeasibleBasis);
}

TEST_CASE("gram problem text round trip") {
  for (const Polynomial& p : {example1(), reduction::build_P()}) {
    const GramProblem g = build_gram_problem(p, candidate_basis(p));
    const std::string text = gram_problem_to_string(g);
    std::istringstream in(text);
    const GramProblem back = read_gram_problem(in);
    CHECK(back.target == g.target);
    CHECK(back.basis.monomials == g.basis.monomials);
    REQUIRE(back.constraints.size() == g.constraints.size());
    CHECK(gram_problem_to_string(back) == text);
  }
  std::istringstream bad("# soscert gram problem\nvariables: x\ntarget: x^2\nbasis: 2\nx\n");
  CHECK_THROWS_AS(read_gram_problem(bad), FormatError);
}

TEST_CASE("block system with the identity block matches the plain problem") {
  const Polynomial p = example1();
  const MonomialBasis b = candidate_basis(p);
  const BlockGramSystem sys = assemble_blocks(p, b, {identity_block(b.size())});
  CHECK(sys.variable_count() == 6);
  CHECK(sys.constraints.size() == 5);
  std::set<std::size_t> cols;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = k; l < 3; ++l) cols.insert(sys.column(0, k, l));
  CHECK(cols.size() == 6);
  CHECK(*cols.rbegin() == 5);
  CHECK(to_string(block_coordinate(sys, 0, 0, 1)) == "x*y");
}
