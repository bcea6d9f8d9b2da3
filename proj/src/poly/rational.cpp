#include "soscert/rational.hpp"

#include <cmath>
#include <string>

#include "soscert/errors.hpp"

namespace soscert {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  std::size_t end = s.size();
  while (end > start && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  s = s.substr(start, end - start);
  if (s.empty()) throw FormatError("empty rational");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit_before = false, digit_after = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (slash ? digit_after : digit_before) = true;
    } else if (s[i] == '/' && !slash) {
      slash = true;
    } else {
      throw FormatError("malformed rational '" + s + "'");
    }
  }
  if (!digit_before || (slash && !digit_after)) throw FormatError("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw FormatError("malformed rational '" + s + "'");
  if (slash && q.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational round_to_denominator(double value, const Integer& denominator) {
  // value is a dyadic rational, so the scaled product is exact before rounding.
  Rational scaled = Rational(value) * denominator;
  Integer num = scaled.get_num(), den = scaled.get_den();
  Integer twice = 2 * num + (sgn(num) >= 0 ? den : Integer(-den));
  Integer rounded;
  mpz_tdiv_q(rounded.get_mpz_t(), twice.get_mpz_t(), Integer(2 * den).get_mpz_t());
  Rational out(rounded, denominator);
  out.canonicalize();
  return out;
}

Rational approximate(double value, long max_denominator) {
  // Continued-fraction convergents on the exact dyadic value.
  Rational x(value);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational r = x;
  for (int it = 0; it < 64; ++it) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational frac = r - Rational(a);
    if (frac == 0) break;
    r = 1 / frac;
  }
  if (q1 == 0) return Rational(static_cast<long>(std::lround(value)));
  Rational out(p1, q1);
  out.canonicalize();
  return out;
}

}  // namespace soscert
