#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "soscert/polynomial.hpp"

namespace soscert {

/// One weighted square: coefficient * multiplier * root^2.
struct CertificateTerm {
  Rational coefficient;
  Polynomial multiplier;
  Polynomial root;
};

/// A claimed identity target = sum of weighted squares.
struct Certificate {
  Polynomial target;
  std::vector<CertificateTerm> terms;

  /// Exact expansion of the right-hand side.
  Polynomial expand() const;
};

/// Text format:
///
///   # soscert certificate
///   variables: x y
///   target: <polynomial>
///   terms: <count>
///   <coefficient> ; <multiplier> ; <root>      (one line per term)
void write_certificate(std::ostream& out, const Certificate& cert);
Certificate read_certificate(std::istream& in);

std::string certificate_to_string(const Certificate& cert);
Certificate certificate_from_string(const std::string& text);

}  // namespace soscert
