#pragma once

#include <variant>
#include <vector>

#include "solenoid/arith.hpp"
#include "solenoid/geometry.hpp"

namespace solenoid {

/// A range of gammas: diag_norm(gamma) <= b, or diag_norm(gamma)^2 < s.
struct GammaBound {
  Rational squared;
  bool inclusive = true;

  static GammaBound at_most(const Rational& bound);
  static GammaBound below_root(const Rational& squared_bound);

  bool admits(const Rational& norm) const;
  /// A cap on every admitted norm.
  Rational cap() const;
  std::string describe() const;
};

struct Witness {
  SElement gamma;
  SElement beta;
  Rational distance;  // min over beta of |gamma x_c - beta|
};

struct Certificate {
  std::variant<SolenoidPoint, Ball> subject;
  Rational delta;
  GammaBound gamma_bound;
  bool verdict = true;
  std::size_t gammas_checked = 0;
  std::vector<Witness> witnesses;
};

/// Verdict true iff for every admitted gamma:
///   min_diagonal_distance(gamma c) - |gamma| rho >= delta / |gamma|.
/// A true verdict covers every point of the ball. Failing gammas are witnesses.
Certificate certify_bad_on_ball(const Ball& b, const Rational& delta, const GammaBound& bound,
                                const PrimeConfig& config);
Certificate certify_bad_at_point(const SolenoidPoint& x, const Rational& delta, const GammaBound& bound,
                                 const PrimeConfig& config);

struct DirichletResult {
  SElement beta;
  SElement gamma;
  Rational distance;
  Rational bound;  // M / N
};

/// First gamma in (diag_norm, numerator, value) order with 0 < |gamma| <= N and
/// min |gamma x - beta| <= M/N, M the largest prime. Throws InvariantViolation
/// if there is none.
DirichletResult dirichlet_search(const SolenoidPoint& x, const Integer& N, const PrimeConfig& config);

struct SpectrumRow {
  SElement gamma;
  SElement beta;
  Rational distance;
  Rational normalized;  // distance * diag_norm(gamma)
};

std::vector<SpectrumRow> approximation_spectrum(const SolenoidPoint& x, const Rational& bound,
                                                const PrimeConfig& config);

struct DimensionBound {
  Rational packing_bound;  // 1 / (2 (p_1...p_k)^2 beta^{k+1})
  Integer packing_count;
  double value;            // log(packing_bound) / |log(alpha beta)|
};

/// Requires 0 < beta < 1/2 and 0 < alpha < 1.
DimensionBound dim_lower_bound(const Rational& alpha, const Rational& beta, const PrimeConfig& config);

/// Natural log of a positive rational, good to double precision for any size.
double log_rational(const Rational& q);

}  // namespace solenoid
