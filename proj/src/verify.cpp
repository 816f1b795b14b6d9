#include "solenoid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "solenoid/close_pairs.hpp"

namespace solenoid {

GammaBound GammaBound::at_most(const Rational& bound) {
  if (sgn(bound) < 0) return {Rational(0), true};
  return {bound * bound, true};
}

GammaBound GammaBound::below_root(const Rational& squared_bound) { return {squared_bound, false}; }

bool GammaBound::admits(const Rational& norm) const {
  const Rational sq = norm * norm;
  return inclusive ? sq <= squared : sq < squared;
}

Rational GammaBound::cap() const { return Rational(ceil_sqrt(squared)); }

std::string GammaBound::describe() const {
  return std::string(inclusive ? "|gamma|^2 <= " : "|gamma|^2 < ") + to_string(squared);
}

namespace {

Certificate certify(std::variant<SolenoidPoint, Ball> subject, const SolenoidPoint& center, const Rational& rho,
                    const Rational& delta, const GammaBound& bound, const PrimeConfig& config) {
  if (sgn(delta) <= 0) throw ParameterError("delta must be positive");
  check_rank(center, config);
  Certificate cert{std::move(subject), delta, bound, true, 0, {}};
  const Rational cap = bound.cap();
  if (cap < 1) return cert;
  // A failing gamma has |gamma c_v - beta|_v < delta/|gamma| + |gamma| rho <= delta + cap rho.
  const std::vector<FractionPair> candidates = close_fraction_pairs(center, cap, delta + cap * rho, config);
  std::vector<Rational> gammas;
  for (const FractionPair& pair : candidates) gammas.push_back(pair.denominator.value());
  std::sort(gammas.begin(), gammas.end(), [&](const Rational& a, const Rational& b) {
    return std::make_tuple(diag_norm(a, config), a.get_num(), a) < std::make_tuple(diag_norm(b, config), b.get_num(), b);
  });
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  for (const Rational& gamma : gammas) {
    const Rational norm = diag_norm(gamma, config);
    if (!bound.admits(norm)) continue;
    ++cert.gammas_checked;
    const DiagonalDistance md = min_diagonal_distance(center.scaled(gamma), config);
    if (md.distance - norm * rho < delta / norm) {
      cert.verdict = false;
      cert.witnesses.push_back({SElement(gamma, config), md.minimizer, md.distance});
    }
  }
  return cert;
}

}  // namespace

Certificate certify_bad_on_ball(const Ball& b, const Rational& delta, const GammaBound& bound,
                                const PrimeConfig& config) {
  return certify(b, b.center(), b.radius(), delta, bound, config);
}

Certificate certify_bad_at_point(const SolenoidPoint& x, const Rational& delta, const GammaBound& bound,
                                 const PrimeConfig& config) {
  return certify(x, x, Rational(0), delta, bound, config);
}

DirichletResult dirichlet_search(const SolenoidPoint& x, const Integer& N, const PrimeConfig& config) {
  if (N < 1) throw ParameterError("N must be a positive integer");
  check_rank(x, config);
  const Rational cap(N);
  const Rational bound(Integer(config.max_prime()), N);
  const std::vector<FractionPair> candidates = close_fraction_pairs(x, cap, 2 * bound, config);
  std::vector<Rational> gammas;
  for (const FractionPair& pair : candidates) gammas.push_back(pair.denominator.value());
  std::sort(gammas.begin(), gammas.end(), [&](const Rational& a, const Rational& b) {
    return std::make_tuple(diag_norm(a, config), a.get_num(), a) < std::make_tuple(diag_norm(b, config), b.get_num(), b);
  });
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  for (const Rational& gamma : gammas) {
    const DiagonalDistance md = min_diagonal_distance(x.scaled(gamma), config);
    if (md.distance <= bound) return {md.minimizer, SElement(gamma, config), md.distance, bound};
  }
  throw InvariantViolation("Dirichlet search exhausted without a solution for N = " + N.get_str());
}

std::vector<SpectrumRow> approximation_spectrum(const SolenoidPoint& x, const Rational& bound,
                                                const PrimeConfig& config) {
  check_rank(x, config);
  std::vector<SpectrumRow> rows;
  for (const SElement& gamma : enumerate_s_elements(config, bound)) {
    const DiagonalDistance md = min_diagonal_distance(x.scaled(gamma.value()), config);
    rows.push_back({gamma, md.minimizer, md.distance, md.distance * diag_norm(gamma, config)});
  }
  return rows;
}

double log_rational(const Rational& q) {
  if (sgn(q) <= 0) throw ParameterError("log of a non-positive rational");
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

DimensionBound dim_lower_bound(const Rational& alpha, const Rational& beta, const PrimeConfig& config) {
  if (sgn(alpha) <= 0 || alpha >= 1) throw ParameterError("alpha must lie in (0,1), got " + to_string(alpha));
  if (sgn(beta) <= 0 || beta >= Rational(1, 2)) {
    throw ParameterError("beta must lie in (0,1/2), got " + to_string(beta));
  }
  DimensionBound out{packing_lower_bound(beta, config), packing_count(beta, config), 0.0};
  out.value = log_rational(out.packing_bound) / std::fabs(log_rational(alpha * beta));
  return out;
}

}  // namespace solenoid
