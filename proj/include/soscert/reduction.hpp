#pragma once

// Concrete polynomials behind the three-triangle inequality: L, its swap
// image M, the rational identity relating them to the squared inequality,
// the cleared substitution P, the published five-square certificate for P,
// and floating-point sampling of the two trigonometric/algebraic forms.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "soscert/certificate.hpp"
#include "soscert/polynomial.hpp"

namespace soscert::reduction {

/// (alpha, beta, gamma, delta)
VariableContext greek_context();
/// (x, y, z, w)
VariableContext xyzw_context();
/// (R, S, alpha, beta, gamma, delta)
VariableContext six_variable_context();

/// L transcribed in the grouped form (braces around the mixed terms).
Polynomial build_L_grouped();
/// L transcribed as a polynomial in gamma and delta.
Polynomial build_L_expanded();
/// Both transcriptions, checked to agree; throws Error on mismatch.
Polynomial build_L();

/// M(alpha,beta,gamma,delta) = L(gamma,delta,alpha,beta).
Polynomial build_M();
/// The (alpha,beta,gamma,delta) -> (gamma,delta,alpha,beta) swap.
Polynomial swap_pairs(const Polynomial& p);

/// Left side minus right side of the squared inequality, at an exact point
/// (R, S, alpha, beta, gamma, delta).
Rational squared_difference(std::span<const Rational> point);

struct EIdentityReport {
  bool holds = false;             ///< E * D == RS(R+S)[(1-gd)L R + (1-ab)M S]
  bool numeric_precheck = false;  ///< same identity at random rational points
  bool displayed_form_holds = false;  ///< variant with the printed second factor
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  Polynomial difference;          ///< zero when holds
};

/// Rebuilds E from the inequality itself over the common denominator
/// D = [(1-g^2)R+(1-a^2)S][(1-d^2)R+(1-b^2)S][(1-gd)R+(1-ab)S]^2
/// and checks the factorization exactly in six variables.
EIdentityReport verify_E_identity(unsigned numeric_points = 50, std::uint64_t seed = 7);

/// alpha = x^2/(1+x^2), ... as a substitution into (x,y,z,w).
RationalFunctionSubstitution square_ratio_substitution();
/// (1+x^2)^4 (1+y^2)^4 (1+z^2)^3 (1+w^2)^3
Polynomial clearing_factor();
Polynomial build_P();

Polynomial weight_polynomial();  ///< z^2 + w^2 + 2 z^2 w^2
Polynomial polynomial_A();
Polynomial polynomial_B();
Polynomial polynomial_C();
/// {(weight, A), (1, B), (1, C)} with target P.
Certificate published_certificate();

/// One summand of L = L1 + L2 + L3 kept in factored form:
/// product(region_factors) * product(squared_factors)^2.
struct FactoredPart {
  std::string name;
  std::vector<Polynomial> region_factors;
  std::vector<Polynomial> squared_factors;
  Polynomial expand() const;
};

struct LDecomposition {
  FactoredPart L1, L2, L3;
  Polynomial sum() const;
};

LDecomposition build_L_decomposition();

struct SampleReport {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double min_slack = 0;                ///< min over samples of (right - left)
  std::array<double, 6> worst_input{};  ///< (a, b, c, d, R, S) at the minimum
};

/// Both sides of the arcsine inequality; returns right minus left.
double arcsine_slack(double a, double b, double c, double d, double R, double S);
/// Both sides of the 1/(1-sqrt) inequality; returns right minus left.
double ratio_slack(double a, double b, double c, double d, double R, double S);

/// (a,b,c,d,R,S) log-uniform on [1e-3, 1e3]; extended precision evaluation;
/// sharded with per-shard seeds derived from (seed, shard).
SampleReport sample_arcsine(std::size_t count, std::uint64_t seed);
SampleReport sample_ratio(std::size_t count, std::uint64_t seed);

struct NonnegativityReport {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  /// min over samples of p(x) / sum_i |c_i m_i(x)|
  double min_relative_value = 0;
  std::vector<double> worst_point;
};

/// Evaluates p at standard-normal points (batched float kernel).
NonnegativityReport sample_nonnegativity(const Polynomial& p, std::size_t count, std::uint64_t seed);

}  // namespace soscert::reduction
