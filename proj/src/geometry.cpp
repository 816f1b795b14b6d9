#include "solenoid/geometry.hpp"

#include <algorithm>
#include <optional>

namespace solenoid {

SolenoidPoint SolenoidPoint::diagonal(const Rational& q, std::size_t rank) {
  return SolenoidPoint(q, std::vector<Rational>(rank, q));
}

SolenoidPoint SolenoidPoint::scaled(const Rational& g) const {
  SolenoidPoint out = *this;
  out.arch_ *= g;
  for (auto& c : out.padic_) c *= g;
  return out;
}

SolenoidPoint operator+(const SolenoidPoint& a, const SolenoidPoint& b) {
  if (a.rank() != b.rank()) throw UsageError("point rank mismatch");
  SolenoidPoint out = a;
  out.arch_ += b.arch_;
  for (std::size_t i = 0; i < a.rank(); ++i) out.padic_[i] += b.padic_[i];
  return out;
}

SolenoidPoint operator-(const SolenoidPoint& a, const SolenoidPoint& b) {
  if (a.rank() != b.rank()) throw UsageError("point rank mismatch");
  SolenoidPoint out = a;
  out.arch_ -= b.arch_;
  for (std::size_t i = 0; i < a.rank(); ++i) out.padic_[i] -= b.padic_[i];
  return out;
}

Ball::Ball(SolenoidPoint center, Rational radius)
    : center_(std::move(center)), radius_(std::move(radius)) {
  if (sgn(radius_) <= 0) throw ParameterError("ball radius must be positive");
}

SolenoidPoint diagonal_embedding(const SElement& g, const PrimeConfig& config) {
  return SolenoidPoint::diagonal(g.value(), config.size());
}

void check_rank(const SolenoidPoint& x, const PrimeConfig& config) {
  if (x.rank() != config.size()) {
    throw UsageError("point has " + std::to_string(x.rank()) + " p-adic components, config has " +
                     std::to_string(config.size()) + " primes");
  }
}

Rational sup_norm(const SolenoidPoint& x, const PrimeConfig& config) {
  check_rank(x, config);
  Rational norm = arch_abs(x.arch());
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Rational a = padic_abs(x.padic(i), config[i]);
    if (a > norm) norm = a;
  }
  return norm;
}

Rational sup_dist(const SolenoidPoint& x, const SolenoidPoint& y, const PrimeConfig& config) {
  check_rank(y, config);
  return sup_norm(x - y, config);
}

bool precedes(const SolenoidPoint& x1, const Rational& r1, const SolenoidPoint& x2,
              const Rational& r2, const PrimeConfig& config) {
  return r1 + sup_dist(x1, x2, config) <= r2;
}

bool precedes(const Ball& inner, const Ball& outer, const PrimeConfig& config) {
  return precedes(inner.center(), inner.radius(), outer.center(), outer.radius(), config);
}

bool ball_contains(const Ball& outer, const Ball& inner, const PrimeConfig& config) {
  check_rank(outer.center(), config);
  check_rank(inner.center(), config);
  if (arch_abs(inner.center().arch() - outer.center().arch()) + inner.radius() > outer.radius()) {
    return false;
  }
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Prime p = config[i];
    if (padic_abs(inner.center().padic(i) - outer.center().padic(i), p) > outer.radius()) return false;
    if (effective_padic_radius(inner.radius(), p).exponent <
        effective_padic_radius(outer.radius(), p).exponent) {
      return false;
    }
  }
  return true;
}

bool balls_intersect(const Ball& a, const Ball& b, const PrimeConfig& config) {
  check_rank(a.center(), config);
  check_rank(b.center(), config);
  if (arch_abs(a.center().arch() - b.center().arch()) > a.radius() + b.radius()) return false;
  const Rational& wider = std::max(a.radius(), b.radius());
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (padic_abs(a.center().padic(i) - b.center().padic(i), config[i]) > wider) return false;
  }
  return true;
}

bool interiors_disjoint(const Ball& a, const Ball& b, const PrimeConfig& config) {
  check_rank(a.center(), config);
  check_rank(b.center(), config);
  if (arch_abs(a.center().arch() - b.center().arch()) >= a.radius() + b.radius()) return true;
  const Rational& wider = std::max(a.radius(), b.radius());
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (padic_abs(a.center().padic(i) - b.center().padic(i), config[i]) > wider) return true;
  }
  return false;
}

EffectiveRadius effective_padic_radius(const Rational& rho, Prime p) {
  if (sgn(rho) <= 0) throw ParameterError("radius must be positive");
  const long e = floor_log(rho, p);
  return {prime_power(p, e), -e};
}

std::vector<Rational> padic_subball_representatives(const Rational& c, const Rational& rho, Prime p) {
  if (!is_prime(p)) throw ConfigError("not a prime: " + std::to_string(p));
  const Rational step = prime_power(p, effective_padic_radius(rho, p).exponent);
  std::vector<Rational> reps;
  reps.reserve(p);
  for (Prime j = 0; j < p; ++j) reps.push_back(c + step * Rational(Integer(j)));
  return reps;
}

LatticeReduction reduce_mod_lattice(const SolenoidPoint& y, const PrimeConfig& config) {
  check_rank(y, config);
  std::vector<CongruenceTarget> targets;
  for (std::size_t i = 0; i < config.size(); ++i) targets.push_back({y.padic(i), 0});
  const CongruenceSolution sol = congruence_solve(targets, config);
  // sol.modulus == 1: the shift is sol.base + n, n chosen for the Archimedean window.
  Rational shift = sol.base.value() + Rational(floor(y.arch() - sol.base.value()));
  SElement g(shift, config);
  return {y - diagonal_embedding(g, config), std::move(g)};
}

bool in_fundamental_domain(const SolenoidPoint& y, const PrimeConfig& config) {
  check_rank(y, config);
  if (sgn(y.arch()) < 0 || y.arch() >= 1) return false;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (padic_abs(y.padic(i), config[i]) > 1) return false;
  }
  return true;
}

namespace {

// Closest element of base + g Z to target (ties toward +infinity).
Rational nearest_in_coset(const Rational& target, const CongruenceSolution& coset) {
  const Integer k = round_half_up((target - coset.base.value()) / coset.modulus);
  return coset.base.value() + coset.modulus * Rational(k);
}

CongruenceSolution threshold_coset(const SolenoidPoint& y, const std::vector<long>& exps,
                                   const PrimeConfig& config) {
  std::vector<CongruenceTarget> targets;
  for (std::size_t i = 0; i < config.size(); ++i) targets.push_back({y.padic(i), exps[i]});
  return congruence_solve(targets, config);
}

}  // namespace

DiagonalDistance min_diagonal_distance(const SolenoidPoint& y, const PrimeConfig& config) {
  check_rank(y, config);
  if (is_s_element(y.arch(), config) &&
      std::all_of(y.padic().begin(), y.padic().end(), [&](const Rational& c) { return c == y.arch(); })) {
    return {0, SElement(y.arch(), config)};
  }
  // Walk the radius r downward through the intervals on which the p-adic
  // thresholds m_p(r) = min{m : p^-m <= r} are constant. On each, the feasible
  // beta form one coset, and the Archimedean distance to it only grows as r shrinks.
  const std::size_t k = config.size();
  std::vector<long> exps(k);
  const Rational start = sup_norm(y, config);
  for (std::size_t i = 0; i < k; ++i) exps[i] = -floor_log(start, config[i]);

  std::optional<Rational> best;
  for (;;) {
    Rational lower = 0;
    for (std::size_t i = 0; i < k; ++i) lower = std::max(lower, prime_power(config[i], -exps[i]));
    const CongruenceSolution coset = threshold_coset(y, exps, config);
    const Rational beta = nearest_in_coset(y.arch(), coset);
    const Rational arch_gap = arch_abs(y.arch() - beta);
    const Rational here = sup_dist(y, SolenoidPoint::diagonal(beta, k), config);
    if (!best || here < *best) best = here;
    if (arch_gap >= lower) break;
    for (std::size_t i = 0; i < k; ++i) {
      if (prime_power(config[i], -exps[i]) == lower) ++exps[i];
    }
  }

  const Rational& d = *best;
  for (std::size_t i = 0; i < k; ++i) exps[i] = -floor_log(d, config[i]);
  const CongruenceSolution coset = threshold_coset(y, exps, config);
  const Rational lo = y.arch() - d;
  const Rational hi = y.arch() + d;
  const Rational& base = coset.base.value();
  const Rational& g = coset.modulus;
  const Integer kmin = ceil((lo - base) / g);
  const Integer kmax = floor((hi - base) / g);
  if (kmin > kmax) throw InvariantViolation("min_diagonal_distance: empty minimizer set");
  std::vector<Integer> ks = {kmin, kmax};
  const Integer k0 = floor(-base / g);
  for (const Integer& c : {k0, Integer(k0 + 1)}) {
    if (c >= kmin && c <= kmax) ks.push_back(c);
  }
  std::optional<Rational> chosen;
  for (const Integer& c : ks) {
    Rational beta = base + g * Rational(c);
    if (!chosen || abs(beta) < abs(*chosen) || (abs(beta) == abs(*chosen) && beta > *chosen)) {
      chosen = std::move(beta);
    }
  }
  if (sup_dist(y, SolenoidPoint::diagonal(*chosen, k), config) != d) {
    throw InvariantViolation("min_diagonal_distance: tie-break candidate is not a minimizer");
  }
  return {d, SElement(*chosen, config)};
}

namespace {

void require_packing_beta(const Rational& beta) {
  if (sgn(beta) <= 0 || beta >= Rational(1, 2)) {
    throw ParameterError("beta must satisfy 0 < beta < 1/2, got " + to_string(beta));
  }
}

long padic_packing_exponent(const Rational& beta, Prime p) { return floor_log(1 / beta, p) - 1; }

}  // namespace

Integer packing_count(const Rational& beta, const PrimeConfig& config) {
  require_packing_beta(beta);
  Integer n = floor(1 / beta);
  for (Prime p : config.primes()) n *= prime_power(p, padic_packing_exponent(beta, p)).get_num();
  return n;
}

Rational packing_lower_bound(const Rational& beta, const PrimeConfig& config) {
  require_packing_beta(beta);
  const Integer prod = config.product();
  return 1 / (2 * Rational(prod * prod) * power(beta, static_cast<long>(config.size()) + 1));
}

std::vector<Ball> packing_construct(const Ball& parent, const Rational& beta,
                                    const PrimeConfig& config) {
  require_packing_beta(beta);
  check_rank(parent.center(), config);
  const Rational& rho = parent.radius();
  const Rational small = beta * rho;

  const long arch_count = floor(1 / beta).get_si();
  std::vector<Rational> arch_centers;
  for (long j = 0; j < arch_count; ++j) {
    arch_centers.push_back(parent.center().arch() + small * Rational(2 * j + 1 - arch_count));
  }

  std::vector<std::vector<Rational>> padic_centers(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Prime p = config[i];
    const long m_slack = effective_padic_radius((1 - beta) * rho, p).exponent;
    const long m_small = effective_padic_radius(small, p).exponent;
    const long e = padic_packing_exponent(beta, p);
    if (e > m_small - m_slack) throw InvariantViolation("packing: not enough p-adic room");
    const Rational step = prime_power(p, m_slack);
    const long count = prime_power(p, e).get_num().get_si();
    for (long j = 0; j < count; ++j) {
      padic_centers[i].push_back(parent.center().padic(i) + step * Rational(j));
    }
  }

  std::vector<Ball> out;
  std::vector<std::size_t> idx(config.size(), 0);
  for (const Rational& a : arch_centers) {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Rational> comps(config.size());
      for (std::size_t i = 0; i < config.size(); ++i) comps[i] = padic_centers[i][idx[i]];
      out.emplace_back(SolenoidPoint(a, std::move(comps)), small);
      std::size_t i = 0;
      for (; i < config.size(); ++i) {
        if (++idx[i] < padic_centers[i].size()) break;
        idx[i] = 0;
      }
      if (i == config.size()) break;
    }
  }
  return out;
}

}  // namespace solenoid
