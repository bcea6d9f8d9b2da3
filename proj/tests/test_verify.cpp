#include "doctest.h"

#include <fstream>
#include <sstream>

#include "soscert/errors.hpp"
#include "soscert/reduction.hpp"
#include "soscert/verify.hpp"

using namespace soscert;

namespace {

Certificate single(const Polynomial& target, Rational c, const Polynomial& root) {
  return {target, {{std::move(c), Polynomial::constant(target.context(), 1), root}}};
}

}  // namespace

TEST_CASE("published certificate for P") {
  const auto r = verify_identity(reduction::build_P(), reduction::published_certificate());
  CHECK(r.ok);
  CHECK(r.failure == VerifyFailure::kNone);
  CHECK(r.difference.is_zero());
}

TEST_CASE("small identities") {
  const auto x2 = parse("x^2", {"x"});
  const auto x = parse("x", {"x"});
  CHECK(verify_identity(x2, single(x2, 1, x)).ok);

  const auto x2p1 = parse("x^2 + 1", {"x"});
  const auto r = verify_identity(x2p1, single(x2p1, 1, x));
  CHECK_FALSE(r.ok);
  CHECK(r.failure == VerifyFailure::kIdentity);
  CHECK(r.difference == Polynomial::constant(x.context(), 1));
  CHECK(r.leading_difference == std::vector<std::string>{"1"});
}

TEST_CASE("structural failures") {
  const auto x2 = parse("x^2", {"x"});
  const auto x = parse("x", {"x"});
  const auto neg = verify_identity(x2, single(x2, -1, x));
  CHECK(neg.failure == VerifyFailure::kStructural);

  Certificate odd{x2, {{1, parse("x", {"x"}), parse("1", {"x"})}}};
  CHECK(verify_identity(x2, odd).failure == VerifyFailure::kStructural);
  Certificate negative_coef{x2, {{1, parse("x^2 - 1", {"x"}), parse("1", {"x"})}}};
  CHECK(verify_identity(x2, negative_coef).failure == VerifyFailure::kStructural);
  Certificate zero_mult{x2, {{1, Polynomial(x.context()), x}}};
  CHECK(verify_identity(x2, zero_mult).failure == VerifyFailure::kStructural);

  CHECK(is_manifestly_nonnegative(parse("z^2 + w^2 + 2z^2*w^2", {"z", "w"})));
  CHECK_FALSE(is_manifestly_nonnegative(parse("z^2 - w^2", {"z", "w"})));
  CHECK_FALSE(is_manifestly_nonnegative(parse("z*w", {"z", "w"})));
}

TEST_CASE("other variable sets are rejected") {
  const auto x2 = parse("x^2", {"x"});
  const auto y2 = parse("y^2", {"y"});
  const auto r = verify_identity(x2, single(y2, 1, parse("y", {"y"})));
  CHECK(r.failure == VerifyFailure::kStructural);
}

TEST_CASE("region claim for L") {
  CHECK(verify_region_claim_L().ok);

  auto parts = reduction::build_L_decomposition();
  const auto ctx = reduction::greek_context();
  parts.L2.region_factors = {parse("1 - gamma", ctx), parse("1 + delta", ctx)};
  const auto tampered = verify_region_claim_L(parts, reduction::build_L());
  CHECK_FALSE(tampered.ok);

  // L1 is only nonnegative where gamma + delta >= 0; the audit is about the
  // region factor, not global sign.
  const auto l1 = reduction::build_L_decomposition().L1.expand();
  bool found_negative = false;
  for (int a = -3; a <= 3 && !found_negative; ++a)
    for (int g = -3; g <= 0 && !found_negative; ++g) {
      const Rational pt[] = {Rational(a) / 2, Rational(a + 1) / 3, Rational(g - 1) / 2, Rational(g) / 3};
      found_negative = evaluate(rebase(l1, ctx), pt) < 0;
    }
  CHECK(found_negative);
}

TEST_CASE("certificate text round trip") {
  const auto cert = reduction::published_certificate();
  const std::string text = certificate_to_string(cert);
  const Certificate back = certificate_from_string(text);
  CHECK(back.target == cert.target);
  REQUIRE(back.terms.size() == cert.terms.size());
  for (std::size_t i = 0; i < cert.terms.size(); ++i) {
    CHECK(back.terms[i].coefficient == cert.terms[i].coefficient);
    CHECK(back.terms[i].multiplier == cert.terms[i].multiplier);
    CHECK(back.terms[i].root == cert.terms[i].root);
  }
  CHECK(certificate_to_string(back) == text);
  CHECK_THROWS_AS(certificate_from_string("# soscert certificate\nvariables: x\n"), FormatError);
}

TEST_CASE("shipped fixtures") {
  std::ifstream in(SOSCERT_DATA_DIR "/published_certificate.txt");
  REQUIRE(in);
  const Certificate c = read_certificate(in);
  CHECK(verify_identity(reduction::build_P(), c).ok);

  std::ifstream e(SOSCERT_DATA_DIR "/example1_certificate.txt");
  REQUIRE(e);
  const Certificate ex = read_certificate(e);
  CHECK(verify_identity(parse("2x^4 + 2x^3*y - x^2*y^2 + 5y^4", ex.target.context()), ex).ok);
}
