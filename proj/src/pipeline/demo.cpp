#include <algorithm>
#include <chrono>
#include <ostream>

#include "json.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/reduction.hpp"
#include "soscert/verify.hpp"

namespace soscert {

namespace {

using json = nlohmann::ordered_json;

// Reference block profile of the irreducible-representation decomposition:
// blocks of multiplicity one, then blocks appearing twice.
const std::vector<std::size_t> kReferenceSingles{9, 6, 6, 4, 8, 5, 3, 2};
const std::vector<std::size_t> kReferenceDoubles{11, 7, 8, 7, 8, 6};

json sample_json(const reduction::SampleReport& r) {
  return json{{"count", r.count}, {"seed", r.seed}, {"min_slack", r.min_slack},
              {"worst_input", r.worst_input}, {"pass", r.min_slack >= -1e-12}};
}

}  // namespace

DemoResult paper_demo(const DemoOptions& opt) {
  using namespace reduction;
  DemoResult out;
  json j;
  auto note = [&](const std::string& s) {
    if (opt.log) *opt.log << s << '\n';
  };
  bool exact = true;

  bool agree = true;
  Polynomial L(greek_context());
  try {
    L = build_L();
  } catch (const Error&) {
    agree = false;
    L = build_L_grouped();
  }
  j["L"] = {{"transcriptions_agree", agree}, {"terms", L.terms().size()}, {"total_degree", degree_profile(L).total}};
  exact = exact && agree;

  const Polynomial M = build_M();
  const bool m_ok = M == swap_pairs(L) && swap_pairs(M) == L;
  j["M"] = {{"terms", M.terms().size()}, {"swap_image_of_L", m_ok}};
  exact = exact && m_ok;
  note(std::string("L and M: ") + (agree && m_ok ? "ok" : "FAILED"));

  const auto e = verify_E_identity();
  j["E_identity"] = {{"holds", e.holds},
                     {"numeric_precheck", e.numeric_precheck},
                     {"printed_second_factor_holds", e.displayed_form_holds},
                     {"lhs_terms", e.lhs_terms},
                     {"rhs_terms", e.rhs_terms}};
  exact = exact && e.holds;
  note(std::string("E identity: ") + (e.holds ? "holds" : "FAILED"));

  const Polynomial P = build_P();
  const auto prof = degree_profile(P);
  const std::size_t xy[] = {0, 1}, zw[] = {2, 3};
  const bool swap_inv = permute_variables(P, std::vector<std::size_t>{1, 0, 3, 2}) == P;
  j["P"] = {{"terms", P.terms().size()},
            {"expected_terms", 123},
            {"total_degree", prof.total},
            {"per_variable_degrees", prof.per_variable},
            {"expected_per_variable_degrees", {12, 12, 8, 8}},
            {"degree_in_xy", degree_in(P, xy)},
            {"degree_in_zw", degree_in(P, zw)},
            {"invariant_under_xy_zw_swap", swap_inv}};
  exact = exact && P.terms().size() == 123;
  note("P: " + std::to_string(P.terms().size()) + " terms, total degree " + std::to_string(prof.total));

  const auto cert = published_certificate();
  const auto vr = verify_identity(P, cert);
  j["published_certificate"] = {{"verified", vr.ok}, {"message", vr.message}, {"weighted_squares", cert.terms.size()}};
  exact = exact && vr.ok;
  note(std::string("published certificate: ") + (vr.ok ? "verified" : "FAILED"));

  const auto audit = verify_region_claim_L();
  j["L_decomposition"] = {{"sum_matches", audit.sum_matches}, {"region_claim", audit.ok}, {"audit", audit.lines}};
  exact = exact && audit.ok;

  const auto basis = candidate_basis(P);
  const auto problem = build_gram_problem(P, basis);
  j["gram"] = {{"basis_size", basis.size()},
               {"expected_basis_size", 137},
               {"constraints", problem.constraints.size()},
               {"expected_constraints", 1328}};
  note("basis " + std::to_string(basis.size()) + " (expected 137), constraints " +
       std::to_string(problem.constraints.size()) + " (expected 1328)");

  const auto signs = detect_sign_symmetries(P);
  const auto swap = find_swap(P);
  const auto blocking = block_decompose(problem, signs, swap);
  json profile = json::array();
  std::vector<std::size_t> singles, doubles;
  for (const auto& b : blocking.blocks) {
    profile.push_back({b.multiplicity(), b.dimension()});
    (b.multiplicity() == 1 ? singles : doubles).push_back(b.dimension());
  }
  auto sorted = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  j["symmetry"] = {{"sign_group_order", signs.order()},
                   {"swap", swap ? json(*swap) : json(nullptr)},
                   {"group_order", blocking.group_order},
                   {"expected_group_order", 32},
                   {"block_total", blocking.total_dimension()},
                   {"profile", profile},
                   {"reference_singles", kReferenceSingles},
                   {"reference_doubles", kReferenceDoubles},
                   {"profile_matches_reference_multiset",
                    sorted(singles) == sorted(kReferenceSingles) && sorted(doubles) == sorted(kReferenceDoubles)}};
  note("group order " + std::to_string(blocking.group_order) + ", block total " +
       std::to_string(blocking.total_dimension()));

  if (opt.samples > 0) {
    const auto t1 = sample_arcsine(opt.samples, opt.seed);
    const auto l2 = sample_ratio(opt.samples, opt.seed + 1);
    const auto nn = sample_nonnegativity(P, std::min<std::size_t>(opt.samples, 10000), opt.seed + 2);
    const bool nn_ok = nn.min_relative_value >= -1e-9;
    j["sampling"] = {{"arcsine_inequality", sample_json(t1)},
                     {"ratio_inequality", sample_json(l2)},
                     {"P_nonnegativity",
                      {{"count", nn.count}, {"seed", nn.seed}, {"min_relative_value", nn.min_relative_value}, {"pass", nn_ok}}}};
    out.sampling_pass = t1.min_slack >= -1e-12 && l2.min_slack >= -1e-12 && nn_ok;
    note(std::string("sampling: ") + (out.sampling_pass ? "ok" : "FAILED"));
  } else {
    j["sampling"] = nullptr;
  }

  if (opt.rediscover) {
    FindOptions fo;
    fo.symmetry = opt.symmetry;
    fo.log = opt.log;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto rep = find_certificate(P, fo);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.rediscovered = rep.verified;
      out.certificate = rep.certificate;
      j["rediscovery"] = json::parse(find_report_json(rep));
      j["rediscovery"]["seconds"] = secs;
    } catch (const StageError& err) {
      j["rediscovery"] = {{"verified", false}, {"stage", err.stage()}, {"error", err.what()}};
    }
    note(std::string("rediscovery: ") + (out.rediscovered ? "verified" : "FAILED"));
  }

  out.exact_checks_pass = exact;
  j["exact_checks_pass"] = exact;
  j["sampling_pass"] = out.sampling_pass;
  out.json = j.dump(2);
  return out;
}

}  // namespace soscert
