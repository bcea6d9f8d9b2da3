#include "soscert/certificate.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "soscert/errors.hpp"

namespace soscert {

Polynomial Certificate::expand() const {
  Polynomial sum(target.context());
  for (const auto& t : terms) sum = sum + t.coefficient * (t.multiplier * t.root * t.root);
  return sum;
}

void write_certificate(std::ostream& out, const Certificate& cert) {
  out << "# soscert certificate\n";
  out << "variables:";
  for (const auto& n : cert.target.context().names()) out << ' ' << n;
  out << "\ntarget: " << to_string(cert.target) << "\n";
  out << "terms: " << cert.terms.size() << "\n";
  for (const auto& t : cert.terms)
    out << to_string(t.coefficient) << " ; " << to_string(t.multiplier) << " ; " << to_string(t.root)
        << "\n";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (!line.empty() && line[0] != '#') return true;
  }
  return false;
}

std::string expect_field(std::istream& in, std::size_t& lineno, const std::string& key) {
  std::string line;
  if (!next_content_line(in, line, lineno)) throw FormatError("missing '" + key + ":' line");
  if (line.rfind(key + ":", 0) != 0)
    throw FormatError("line " + std::to_string(lineno) + ": expected '" + key + ":'");
  return trim(line.substr(key.size() + 1));
}

}  // namespace

Certificate read_certificate(std::istream& in) {
  std::size_t lineno = 0;
  std::istringstream names_in(expect_field(in, lineno, "variables"));
  std::vector<std::string> names;
  for (std::string n; names_in >> n;) names.push_back(n);
  const VariableContext ctx(std::move(names));

  auto parse_at = [&](const std::string& text, const char* what) {
    try {
      return parse(text, ctx);
    } catch (const ParseError& e) {
      throw FormatError("line " + std::to_string(lineno) + ": bad " + what + ": " + e.what());
    }
  };

  Certificate cert;
  cert.target = parse_at(expect_field(in, lineno, "target"), "target");
  const std::string count_text = expect_field(in, lineno, "terms");
  std::size_t count = 0;
  try {
    count = std::stoul(count_text);
  } catch (const std::exception&) {
    throw FormatError("line " + std::to_string(lineno) + ": bad term count");
  }
  std::string line;
  for (std::size_t i = 0; i < count; ++i) {
    if (!next_content_line(in, line, lineno))
      throw FormatError("expected " + std::to_string(count) + " terms, found " + std::to_string(i));
    const auto s1 = line.find(';');
    const auto s2 = s1 == std::string::npos ? s1 : line.find(';', s1 + 1);
    if (s2 == std::string::npos)
      throw FormatError("line " + std::to_string(lineno) + ": expected 'coefficient ; multiplier ; root'");
    CertificateTerm t;
    try {
      t.coefficient = parse_rational(trim(line.substr(0, s1)));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
    t.multiplier = parse_at(trim(line.substr(s1 + 1, s2 - s1 - 1)), "multiplier");
    t.root = parse_at(trim(line.substr(s2 + 1)), "square root");
    cert.terms.push_back(std::move(t));
  }
  if (next_content_line(in, line, lineno))
    throw FormatError("line " + std::to_string(lineno) + ": trailing content after the last term");
  return cert;
}

std::string certificate_to_string(const Certificate& cert) {
  std::ostringstream out;
  write_certificate(out, cert);
  return out.str();
}

Certificate certificate_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_certificate(in);
}

}  // namespace soscert
