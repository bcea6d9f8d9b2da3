#include "doctest.h"

#include <random>

#include "random_poly.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/verify.hpp"

using namespace soscert;

namespace {

int stage_code(const Polynomial& p, const FindOptions& opt = {}) {
  try {
    find_certificate(p, opt);
    return kExitOk;
  } catch (const StageError& e) {
    return e.exit_code();
  }
}

}  // namespace

TEST_CASE("example 1 end to end") {
  const auto p = parse("2x^4 + 2x^3*y - x^2*y^2 + 5y^4", {"x", "y"});
  const FindReport r = find_certificate(p);
  CHECK(r.verified);
  CHECK(r.basis_size == 3);
  CHECK(r.constraint_count == 5);
  CHECK(r.sdp_residual <= 1e-9);
  CHECK(verify_identity(p, r.certificate).ok);
  FindOptions dense;
  dense.dense = true;
  dense.symmetry = false;
  CHECK(find_certificate(p, dense).verified);
}

TEST_CASE("stage failures map to exit codes") {
  CHECK(stage_code(parse("x", {"x"})) == kExitNotCandidate);
  CHECK(stage_code(parse("-x^2", {"x"})) == kExitNotSos);
  // Motzkin: nonnegative but not a sum of squares
  CHECK(stage_code(parse("x^4*y^2 + x^2*y^4 - 3x^2*y^2 + 1", {"x", "y"})) == kExitNotSos);
  // x^4 - x^2... not nonnegative; its basis cannot absorb -x^2 with a PSD matrix
  CHECK(stage_code(parse("x^4 - 3x^2 + 1", {"x"})) == kExitNotSos);
  FindOptions dense;
  dense.dense = true;
  dense.dense_limit = 10;
  CHECK(stage_code(parse("x^6 + y^6 + z^6", {"x", "y", "z"}), dense) == kExitInput);
}

TEST_CASE("zero and constant targets") {
  CHECK(find_certificate(Polynomial(VariableContext({"x"}))).verified);
  const FindReport c = find_certificate(parse("4", {"x"}));
  CHECK(c.verified);
  CHECK(c.certificate.terms.size() == 1);
}

TEST_CASE("singular Gram matrices go through facial reduction") {
  const auto p = parse("(x - y)^2 * (x + 2y)^2 + (x*y - y^2)^2", {"x", "y"});
  const FindReport r = find_certificate(p);
  CHECK(r.verified);
  CHECK(r.face_rounds >= 1);
}

TEST_CASE("symmetric input uses sign and swap blocks") {
  const auto p = parse("x^4 + y^4 + x^2*y^2 + x^2 + y^2 + 1", {"x", "y"});
  const FindReport r = find_certificate(p);
  CHECK(r.verified);
  CHECK(r.group_order == 8);
  REQUIRE(r.swap.has_value());
  CHECK(*r.swap == std::vector<std::size_t>{1, 0});
  FindOptions plain;
  plain.symmetry = false;
  CHECK(find_certificate(p, plain).verified);
}

TEST_CASE("a denominator bound of 1 forces a rounding failure") {
  // the xy entry of every Gram matrix is 1/2
  const auto p = parse("x^2 + x*y + y^2", {"x", "y"});
  FindOptions tight;
  tight.denominator_bound = 1;
  CHECK(stage_code(p, tight) == kExitRounding);
  CHECK(find_certificate(p).verified);
}

TEST_CASE("random sums of squares are certified") {
  std::mt19937_64 rng(2024);
  int verified = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = testing::random_sos(rng);
    CAPTURE(trial);
    CAPTURE(to_string(p));
    try {
      const FindReport r = find_certificate(p);
      CHECK(r.verified);
      CHECK(verify_identity(p, r.certificate).ok);
      verified += r.verified;
    } catch (const StageError& e) {
      FAIL_CHECK(std::string(e.what()));
    }
  }
  CHECK(verified == 50);
}

TEST_CASE("low-rank sums of squares fail cleanly or verify") {
  // Minimal faces here can be irrational; no rational reduction exists then.
  std::mt19937_64 rng(77);
  int verified = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = testing::random_low_rank_sos(rng);
    CAPTURE(trial);
    CAPTURE(to_string(p));
    try {
      const FindReport r = find_certificate(p);
      CHECK(r.verified);
      verified += r.verified;
    } catch (const StageError& e) {
      CHECK((e.exit_code() == kExitNotSos || e.exit_code() == kExitRounding));
    }
  }
  MESSAGE("low-rank inputs certified: " << verified << " of 100");
  CHECK(verified >= 80);
}
