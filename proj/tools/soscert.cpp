#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/verify.hpp"

using namespace soscert;
using json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw StageError("input", kExitInput, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Polynomial file: '#' comments, an optional "variables: ..." line, the
// rest is one expression. Without the header, variables are taken in order
// of first appearance.
Polynomial read_polynomial_file(const std::string& path, const VariableContext* ctx = nullptr) {
  std::istringstream in(slurp(path));
  std::vector<std::string> declared;
  std::string body, line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.rfind("variables:", 0) == 0) {
      std::istringstream names(line.substr(10));
      for (std::string v; names >> v;) declared.push_back(v);
      continue;
    }
    if (line.rfind("target:", 0) == 0) line = line.substr(7);
    body += line + ' ';
  }
  if (body.find_first_not_of(" \t\r") == std::string::npos) throw StageError("input", kExitInput, path + " is empty");
  try {
    if (ctx) {
      const Polynomial p = declared.empty() ? parse(body, *ctx) : parse(body, declared);
      return rebase(p, *ctx);
    }
    if (declared.empty()) {
      for (std::size_t i = 0; i < body.size();) {
        if (std::isalpha(static_cast<unsigned char>(body[i])) || body[i] == '_') {
          std::size_t j = i;
          while (j < body.size() && (std::isalnum(static_cast<unsigned char>(body[j])) || body[j] == '_')) ++j;
          const std::string name = body.substr(i, j - i);
          if (std::find(declared.begin(), declared.end(), name) == declared.end()) declared.push_back(name);
          i = j;
        } else if (std::isdigit(static_cast<unsigned char>(body[i]))) {
          while (i < body.size() && (std::isdigit(static_cast<unsigned char>(body[i])) || body[i] == '.')) ++i;
        } else {
          ++i;
        }
      }
      if (declared.empty()) declared.push_back("x");
    }
    return parse(body, declared);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("input", kExitInput, path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw StageError("output", kExitInput, "cannot write " + path);
  out << text;
}

int cmd_find(const std::string& input, const FindOptions& opt, const std::string& out_path,
             const std::string& gram_path) {
  const Polynomial p = read_polynomial_file(input);
  if (!gram_path.empty()) {
    try {
      write_text(gram_path, gram_problem_to_string(build_gram_problem(p, candidate_basis(p))));
    } catch (const NotSosCandidate& e) {
      throw StageError("basis", kExitNotCandidate, e.what());
    } catch (const InfeasibleBasis& e) {
      throw StageError("gram", kExitInfeasible, e.what());
    }
  }
  const FindReport rep = find_certificate(p, opt);
  if (!rep.blocking_table.empty()) std::cerr << rep.blocking_table;
  json j = json::parse(find_report_json(rep));
  if (out_path.empty()) j["certificate"] = certificate_to_string(rep.certificate);
  else write_text(out_path, certificate_to_string(rep.certificate));
  std::cout << j.dump(2) << '\n';
  std::cerr << (rep.verified ? "certificate verified" : "certificate FAILED verification") << " ("
            << rep.certificate.terms.size() << " squares)\n";
  return rep.verified ? kExitOk : kExitIdentity;
}

int cmd_verify(const std::string& target_path, const std::string& cert_path) {
  Certificate cert;
  try {
    std::istringstream in(slurp(cert_path));
    cert = read_certificate(in);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("input", kExitInput, cert_path + ": " + e.what());
  }
  const Polynomial target = read_polynomial_file(target_path, &cert.target.context());
  const VerifyReport r = verify_identity(target, cert);
  json j{{"verified", r.ok},
         {"failure", r.failure == VerifyFailure::kNone         ? "none"
                     : r.failure == VerifyFailure::kStructural ? "structural"
                                                               : "identity"},
         {"message", r.message},
         {"squares", cert.terms.size()}};
  if (!r.leading_difference.empty()) j["leading_difference"] = r.leading_difference;
  std::cout << j.dump(2) << '\n';
  std::cerr << r.message << '\n';
  if (r.ok) return kExitOk;
  return r.failure == VerifyFailure::kStructural ? kExitStructural : kExitIdentity;
}

int cmd_demo(const DemoOptions& opt, const std::string& out_path) {
  const DemoResult r = paper_demo(opt);
  std::cout << r.json << '\n';
  if (!out_path.empty() && r.certificate) write_text(out_path, certificate_to_string(*r.certificate));
  if (!r.exact_checks_pass) return kExitIdentity;
  if (!r.sampling_pass) return kExitNotSos;
  if (opt.rediscover && !r.rediscovered) return kExitNotSos;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sum-of-squares certificates for polynomials"};
  app.require_subcommand(1);

  FindOptions find_opt;
  std::string find_input, out_path, gram_path, bound_text, swap_text;
  bool no_symmetry = false;
  auto* find = app.add_subcommand("find", "search for a certificate of a polynomial");
  find->add_option("input", find_input, "polynomial file, '-' for stdin")->required();
  find->add_flag("--no-symmetry", no_symmetry, "skip sign and swap symmetry reduction");
  find->add_flag("--dense", find_opt.dense, "use every monomial up to half degree");
  find->add_option("--denominator-bound", bound_text, "largest rounding denominator (default 2^60)");
  find->add_option("--feas-tol", find_opt.feas_tol, "SDP feasibility tolerance");
  find->add_option("--swap", swap_text, "variable involution, e.g. 1,0,3,2");
  find->add_option("--out", out_path, "certificate file");
  find->add_option("--gram-out", gram_path, "write the Gram constraint system");
  find->add_flag("-v,--verbose", "progress on stderr");

  std::string target_path, cert_path;
  auto* verify = app.add_subcommand("verify", "check a certificate exactly");
  verify->add_option("target", target_path, "polynomial file")->required();
  verify->add_option("certificate", cert_path, "certificate file")->required();

  DemoOptions demo_opt;
  bool demo_no_symmetry = false;
  auto* demo = app.add_subcommand("paper-demo", "rebuild and check the three-triangle certificate");
  demo->add_option("--samples", demo_opt.samples, "random points per sampled inequality");
  demo->add_option("--seed", demo_opt.seed, "sampling seed");
  demo->add_flag("--rediscover", demo_opt.rediscover, "search for a fresh certificate of P");
  demo->add_flag("--no-symmetry", demo_no_symmetry, "rediscover without symmetry reduction");
  demo->add_option("--out", out_path, "write the rediscovered certificate");
  demo->add_flag("-v,--verbose", "progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*find) {
      find_opt.symmetry = !no_symmetry;
      if (find->count("--verbose")) find_opt.log = &std::cerr;
      if (!bound_text.empty()) {
        try {
          find_opt.denominator_bound = Integer(bound_text);
        } catch (const std::invalid_argument&) {
          throw StageError("input", kExitInput, "bad --denominator-bound " + bound_text);
        }
        if (find_opt.denominator_bound < 1) throw StageError("input", kExitInput, "--denominator-bound must be positive");
      }
      if (!swap_text.empty()) {
        std::vector<std::size_t> perm;
        std::istringstream s(swap_text);
        for (std::string tok; std::getline(s, tok, ',');) {
          try {
            perm.push_back(std::stoul(tok));
          } catch (const std::exception&) {
            throw StageError("input", kExitInput, "bad --swap " + swap_text);
          }
        }
        find_opt.swap = perm;
      }
      return cmd_find(find_input, find_opt, out_path, gram_path);
    }
    if (*verify) return cmd_verify(target_path, cert_path);
    demo_opt.symmetry = !demo_no_symmetry;
    demo_opt.log = &std::cerr;
    return cmd_demo(demo_opt, out_path);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotSos;
  }
}
