#include "doctest.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "random_poly.hpp"
#include "soscert/errors.hpp"
#include "soscert/gram.hpp"
#include "soscert/sdp.hpp"

using namespace soscert;

namespace {

SdpInstance example1_instance() {
  const auto p = parse("2x^4 + 2x^3*y - x^2*y^2 + 5y^4", {"x", "y"});
  return make_instance(assemble_blocks(p, candidate_basis(p), {identity_block(3)}));
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("example 1 solves to an interior point") {
  const SdpInstance inst = example1_instance();
  REQUIRE(inst.rows.size() == 5);
  const SdpSolution s = solve(inst);
  CHECK(s.status == SdpStatus::kOptimal);
  CHECK(s.residual <= 1e-9);
  CHECK(s.t > 0.5);
  CHECK(min_eig(s.blocks[0]) >= s.t - 1e-9);
  const auto check = residual_check(inst, s.blocks);
  CHECK(check.max_residual <= 10 * std::max(s.residual, 1e-15));
}

TEST_CASE("residual check on known matrices") {
  const SdpInstance inst = example1_instance();
  // basis order x^2, xy, y^2
  Eigen::MatrixXd q(3, 3);
  q << 2, 1, -3, 1, 5, 0, -3, 0, 5;
  const auto r = residual_check(inst, {q});
  CHECK(r.max_residual == 0);
  CHECK(r.min_eigenvalue > 0);

  SdpInstance one;
  one.block_dims = {1};
  one.rows = {{{0, 0, 0, 1.0}}};
  one.rhs = {2};
  CHECK(residual_check(one, {Eigen::MatrixXd::Zero(1, 1)}).max_residual == 2);
  CHECK_THROWS_AS(residual_check(one, {Eigen::MatrixXd::Zero(2, 2)}), SolverError);
}

TEST_CASE("single constraint on a 1x1 block") {
  SdpInstance inst;
  inst.block_dims = {1};
  inst.rows = {{{0, 0, 0, 1.0}}};
  inst.rhs = {1};
  const SdpSolution s = solve(inst);
  CHECK(s.status == SdpStatus::kOptimal);
  CHECK(s.blocks[0](0, 0) == doctest::Approx(1).epsilon(1e-12));
  CHECK(s.t == doctest::Approx(1).epsilon(1e-7));
}

TEST_CASE("negative definite target has negative optimum") {
  const auto p = parse("-x^2", {"x"});
  const SdpSolution s = solve(make_instance(assemble_blocks(p, candidate_basis(p), {identity_block(1)})));
  CHECK(s.t == doctest::Approx(-1).epsilon(1e-8));
}

TEST_CASE("row order does not change the solution") {
  SdpInstance inst = example1_instance();
  const SdpSolution a = solve(inst);
  std::reverse(inst.rows.begin(), inst.rows.end());
  std::reverse(inst.rhs.begin(), inst.rhs.end());
  const SdpSolution b = solve(inst);
  CHECK((a.blocks[0] - b.blocks[0]).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(a.t - b.t) < 1e-6);
}

TEST_CASE("trace output is one line per iteration") {
  std::ostringstream trace;
  SdpConfig cfg;
  cfg.trace = &trace;
  const SdpSolution s = solve(example1_instance(), cfg);
  const std::string text = trace.str();
  const auto lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == s.iterations + 1);
}

TEST_CASE("random sums of squares have nonnegative optimum") {
  std::mt19937_64 rng(23);
  const VariableContext ctx({"x", "y", "z"});
  for (int trial = 0; trial < 20; ++trial) {
    CAPTURE(trial);
    Polynomial p(ctx);
    const int squares = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < squares; ++k) {
      const Polynomial r = testing::random_polynomial(rng, ctx, 2, 4);
      p = p + r * r;
    }
    if (p.is_zero()) continue;
    const auto basis = candidate_basis(p);
    const SdpSolution s = solve(make_instance(assemble_blocks(p, basis, {identity_block(basis.size())})));
    CHECK(s.status != SdpStatus::kNumericalFailure);
    CHECK(s.t >= -1e-8);
    CHECK(s.residual <= 1e-8);
  }
}

TEST_CASE("empty constraint set") {
  SdpInstance inst;
  inst.block_dims = {2, 1};
  const SdpSolution s = solve(inst);
  CHECK(s.status == SdpStatus::kOptimal);
  CHECK(s.blocks.size() == 2);
}
