#include "soscert/exponent.hpp"

#include <limits>
#include <numeric>

#include "soscert/errors.hpp"

namespace soscert {

Exponent::Exponent(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
  if (n > kMaxVariables) throw Error("too many variables (max " + std::to_string(kMaxVariables) + ")");
}

Exponent::Exponent(std::initializer_list<unsigned> degrees)
    : Exponent(std::span<const unsigned>(degrees.begin(), degrees.size())) {}

Exponent::Exponent(std::span<const unsigned> degrees) : Exponent(degrees.size()) {
  for (std::size_t i = 0; i < degrees.size(); ++i) set(i, degrees[i]);
}

void Exponent::set(std::size_t i, unsigned d) {
  if (d > std::numeric_limits<std::uint16_t>::max()) throw Error("exponent overflow");
  deg_[i] = static_cast<std::uint16_t>(d);
}

unsigned Exponent::total() const noexcept {
  return std::accumulate(deg_.begin(), deg_.begin() + n_, 0u);
}

bool Exponent::all_even() const noexcept {
  return std::all_of(deg_.begin(), deg_.begin() + n_, [](auto d) { return d % 2 == 0; });
}

Exponent Exponent::operator+(const Exponent& other) const {
  Exponent out(n_);
  for (std::size_t i = 0; i < n_; ++i) out.set(i, unsigned(deg_[i]) + other.deg_[i]);
  return out;
}

Exponent Exponent::half() const {
  Exponent out(n_);
  for (std::size_t i = 0; i < n_; ++i) out.deg_[i] = deg_[i] / 2;
  return out;
}

Exponent Exponent::doubled() const { return *this + *this; }

}  // namespace soscert
