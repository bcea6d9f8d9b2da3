#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soscert/exponent.hpp"
#include "soscert/rational.hpp"

namespace soscert {

/// Ordered list of variable names shared by every polynomial built over it.
/// Cheap to copy; equality compares names.
class VariableContext {
 public:
  VariableContext() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VariableContext(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  /// Index of `name`, or size() when absent.
  std::size_t index_of(std::string_view name) const noexcept;

  friend bool operator==(const VariableContext& a, const VariableContext& b) noexcept {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted ascending in GradedLexLess order with no zero
/// coefficients, so two polynomials over the same context are equal iff
/// their term vectors are equal. Values are immutable once built.
class Polynomial {
 public:
  using Term = std::pair<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(VariableContext ctx) : ctx_(std::move(ctx)) {}

  static Polynomial constant(const VariableContext& ctx, const Rational& c);
  static Polynomial variable(const VariableContext& ctx, std::size_t index);
  static Polynomial variable(const VariableContext& ctx, std::string_view name);
  static Polynomial monomial(const VariableContext& ctx, const Exponent& e,
                             const Rational& c = 1);
  /// Builds from unsorted terms; duplicates are summed and zeros dropped.
  static Polynomial from_terms(const VariableContext& ctx, std::vector<Term> terms);

  const VariableContext& context() const noexcept { return ctx_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of `e` (zero when absent).
  Rational coefficient(const Exponent& e) const;
  /// Highest term in graded-lex order; precondition: nonzero.
  const Term& leading_term() const { return terms_.back(); }

  Polynomial operator-() const;
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& p, const Polynomial& q);

 private:
  VariableContext ctx_;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned k);

/// Exact value at `point` (one value per variable, in context order).
Rational evaluate(const Polynomial& p, std::span<const Rational> point);
/// Floating value; used only by sampling checks.
double evaluate_double(const Polynomial& p, std::span<const double> point);

/// Quotient of an exact division. Throws ResidualDenominator when `divisor`
/// does not divide `dividend`; the message carries the remainder.
Polynomial divide_exact(const Polynomial& dividend, const Polynomial& divisor);

/// Re-expresses `p` over `target`, matching variables by name.
Polynomial rebase(const Polynomial& p, const VariableContext& target);

/// Variable i is replaced by variable perm[i] (same context).
Polynomial permute_variables(const Polynomial& p, std::span<const std::size_t> perm);

/// Substitutes polynomials for variables: variable i of `p` becomes
/// images[i], all over a common target context.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images);

struct RationalFunction {
  Polynomial numerator;
  Polynomial denominator;
};

/// Per-variable rational-function images, all over one target context.
class RationalFunctionSubstitution {
 public:
  explicit RationalFunctionSubstitution(std::vector<RationalFunction> images);
  const std::vector<RationalFunction>& images() const noexcept { return images_; }
  const VariableContext& target() const { return images_.front().numerator.context(); }

 private:
  std::vector<RationalFunction> images_;
};

/// Computes p(subst) * clearing_factor as an exact polynomial. The
/// substitution is carried out over a common denominator; a denominator that
/// survives multiplication by `clearing_factor` raises ResidualDenominator.
Polynomial substitute_and_clear(const Polynomial& p, const RationalFunctionSubstitution& subst,
                                const Polynomial& clearing_factor);

inline constexpr int kZeroPolynomialDegree = std::numeric_limits<int>::min();

struct DegreeProfile {
  int total = kZeroPolynomialDegree;
  std::vector<int> per_variable;
};

DegreeProfile degree_profile(const Polynomial& p);
/// Largest total degree of the support restricted to a subset of variables.
int degree_in(const Polynomial& p, std::span<const std::size_t> variables);

/// Parses the polynomial grammar over `ctx`. Throws ParseError.
Polynomial parse(std::string_view text, const VariableContext& ctx);
Polynomial parse(std::string_view text, std::vector<std::string> variables);

/// Canonical text: descending graded-lex, explicit '*' and '^'.
std::string to_string(const Polynomial& p);

}  // namespace soscert
