#include "soscert/verify.hpp"

#include <algorithm>

namespace soscert {

bool is_manifestly_nonnegative(const Polynomial& m) {
  if (m.is_zero()) return false;
  for (const auto& [e, c] : m.terms())
    if (c < 0 || !e.all_even()) return false;
  return true;
}

VerifyReport verify_identity(const Polynomial& target, const Certificate& cert) {
  VerifyReport r;
  auto structural = [&](std::string msg) {
    r.failure = VerifyFailure::kStructural;
    r.message = std::move(msg);
    return r;
  };
  if (!(cert.target.context() == target.context()))
    return structural("certificate variables differ from the target's");
  for (std::size_t i = 0; i < cert.terms.size(); ++i) {
    const auto& t = cert.terms[i];
    const std::string which = "term " + std::to_string(i + 1);
    if (!(t.multiplier.context() == target.context()) || !(t.root.context() == target.context()))
      return structural(which + " uses different variables");
    if (t.coefficient < 0) return structural(which + " has negative weight " + to_string(t.coefficient));
    if (!is_manifestly_nonnegative(t.multiplier))
      return structural(which + " multiplier is not manifestly nonnegative: " + to_string(t.multiplier));
  }
  r.difference = target - cert.expand();
  if (!r.difference.is_zero()) {
    r.failure = VerifyFailure::kIdentity;
    const auto terms = r.difference.terms();
    const std::size_t shown = std::min<std::size_t>(5, terms.size());
    for (std::size_t k = 0; k < shown; ++k) {
      const auto& [e, c] = terms[terms.size() - 1 - k];
      r.leading_difference.push_back(to_string(Polynomial::monomial(target.context(), e, c)));
    }
    r.message = "identity fails; difference has " + std::to_string(terms.size()) + " terms";
    return r;
  }
  r.ok = true;
  r.message = "identity holds";
  return r;
}

RegionAudit verify_region_claim_L(const reduction::LDecomposition& parts, const Polynomial& L) {
  RegionAudit audit;
  const auto ctx = L.context();
  const Polynomial half_plane = parse("gamma+delta", ctx);
  const Polynomial box = parse("(1-gamma)*(1-delta)", ctx);
  bool all = true;
  for (const auto* part : {&parts.L1, &parts.L2, &parts.L3}) {
    Polynomial region = Polynomial::constant(ctx, 1);
    for (const auto& f : part->region_factors) region = region * rebase(f, ctx);
    std::string kind;
    if (region == half_plane) kind = "gamma+delta";
    else if (region == box) kind = "(1-gamma)*(1-delta)";
    bool ok = !kind.empty() && !part->squared_factors.empty();
    for (const auto& s : part->squared_factors) ok = ok && !s.is_zero();
    all = all && ok;
    audit.lines.push_back(part->name + ": " + (ok ? "squares times " + kind : "region factor " + to_string(region) + " not allowed"));
  }
  audit.sum_matches = rebase(parts.sum(), ctx) == L;
  audit.lines.push_back(std::string("sum equals L: ") + (audit.sum_matches ? "yes" : "no"));
  audit.ok = all && audit.sum_matches;
  return audit;
}

RegionAudit verify_region_claim_L() {
  return verify_region_claim_L(reduction::build_L_decomposition(), reduction::build_L());
}

}  // namespace soscert
