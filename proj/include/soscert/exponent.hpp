#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>

namespace soscert {

inline constexpr std::size_t kMaxVariables = 12;

/// Per-variable degrees of a monomial. Fixed inline storage; the variable
/// count is part of the value.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t n);
  Exponent(std::initializer_list<unsigned> degrees);
  explicit Exponent(std::span<const unsigned> degrees);

  std::size_t size() const noexcept { return n_; }
  unsigned operator[](std::size_t i) const noexcept { return deg_[i]; }
  void set(std::size_t i, unsigned d);

  unsigned total() const noexcept;
  bool all_even() const noexcept;
  bool is_zero() const noexcept { return total() == 0; }

  Exponent operator+(const Exponent& other) const;
  /// Componentwise half; caller guarantees all_even().
  Exponent half() const;
  Exponent doubled() const;

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.n_ == b.n_ && std::equal(a.deg_.begin(), a.deg_.begin() + a.n_, b.deg_.begin());
  }

  std::span<const std::uint16_t> degrees() const noexcept { return {deg_.data(), n_}; }

 private:
  std::array<std::uint16_t, kMaxVariables> deg_{};
  std::uint8_t n_ = 0;
};

/// Graded-lexicographic order: total degree first, then lexicographic with
/// the first variable most significant. Ascending, so x^2 > x*y > y^2 in
/// (x,y) sorts as y^2, x*y, x^2.
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const noexcept {
    const unsigned ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    auto da = a.degrees(), db = b.degrees();
    return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
  }
};

struct ExponentHash {
  std::size_t operator()(const Exponent& e) const noexcept {
    std::size_t h = e.size();
    for (auto d : e.degrees()) h = h * 1000003u ^ d;
    return h;
  }
};

}  // namespace soscert
