#include "solenoid/strategy.hpp"

#include <algorithm>

namespace solenoid {

Rational StrategyParams::preamble_threshold() const { return contraction() * c / 8; }

std::size_t StrategyParams::preamble_length() const {
  const Rational threshold = preamble_threshold();
  std::size_t s = 0;
  Rational rho = rho0;
  while (rho > threshold) {
    rho *= contraction();
    ++s;
  }
  return s;
}

Rational StrategyParams::bob_radius(std::size_t j) const {
  return rho0 * power(contraction(), static_cast<long>(j));
}

std::size_t StrategyParams::block_opening_index(long n) const {
  if (n < 1) throw ParameterError("block index must be >= 1");
  return preamble_length() + static_cast<std::size_t>((n - 1) * t);
}

std::size_t StrategyParams::block_certified_index(long n) const {
  if (n < 1) throw ParameterError("block index must be >= 1");
  return preamble_length() + static_cast<std::size_t>(n * t);
}

Rational winning_alpha(const PrimeConfig& config) {
  const Integer p(config.max_prime());
  return Rational(Integer(1), p * p);
}

StrategyParams compute_params(const Rational& beta, const Rational& rho0, const PrimeConfig& config) {
  if (sgn(beta) <= 0 || beta >= 1) throw ParameterError("beta must lie in (0,1), got " + to_string(beta));
  if (sgn(rho0) <= 0) throw ParameterError("rho0 must be positive, got " + to_string(rho0));
  StrategyParams s{config, winning_alpha(config), beta, 0, 0, 1, 0, rho0};
  const Rational ab = s.alpha * beta;
  s.c = 1 + ab - 2 * s.alpha;
  if (sgn(s.c) <= 0 || s.c >= 1) throw InvariantViolation("c outside (0,1): " + to_string(s.c));

  Rational power_t = ab;
  while (power_t >= s.c / 2) {
    power_t *= ab;
    ++s.t;
  }
  if (power_t < ab * s.c / 2) throw InvariantViolation("no t with alpha beta c/2 <= (alpha beta)^t < c/2");
  s.rsq = 1 / power_t;

  const Rational radius_cap = std::min<Rational>(rho0, s.alpha * s.alpha * beta * beta * s.c / 8);
  s.delta = std::min<Rational>(s.alpha, s.c / 2) * radius_cap;
  if (s.delta > s.c / 2 * radius_cap) throw InvariantViolation("delta exceeds (c/2) min{rho0, a^2 b^2 c/8}");
  return s;
}

bool block_invariant_radius_check(const StrategyParams& params, long n) {
  const Rational lhs = params.delta / power(params.rsq, n - 1);
  return lhs <= params.alpha * params.bob_radius(params.block_opening_index(n));
}

bool region_intersects(const Ball& ball, const FractionPair& pair, const Rational& delta,
                       const PrimeConfig& config) {
  const Rational& gamma = pair.denominator.value();
  const Rational q = pair.quotient();
  const Rational norm = diag_norm(gamma, config);
  const SolenoidPoint& c = ball.center();
  const Rational& rho = ball.radius();
  // Archimedean: closed interval vs open interval.
  if (arch_abs(c.arch() - q) >= rho + delta / (arch_abs(gamma) * norm)) return false;
  // Ultrametric: closed B(c, rho) meets open B(q, s) iff |c - q| <= rho or |c - q| < s.
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Prime p = config[i];
    const Rational d = padic_abs(c.padic(i) - q, p);
    if (d > rho && d >= delta / (padic_abs(gamma, p) * norm)) return false;
  }
  return true;
}

std::vector<FractionPair> find_danger_pairs(const Ball& ball, long n, const StrategyParams& params) {
  if (n < 1) throw ParameterError("block index must be >= 1");
  const PrimeConfig& config = params.config;
  const Rational lower_sq = power(params.rsq, n - 1);
  const Rational upper_sq = power(params.rsq, n);
  const Rational cap(ceil_sqrt(upper_sq));
  // Any pair whose region meets the ball has |gamma c_v - beta|_v < |gamma| rho + delta / |gamma|.
  const std::vector<FractionPair> candidates =
      close_fraction_pairs(ball.center(), cap, cap * ball.radius() + params.delta, config);
  std::vector<FractionPair> found;
  for (const FractionPair& pair : candidates) {
    const Rational norm = diag_norm(pair.denominator, config);
    const Rational norm_sq = norm * norm;
    if (norm_sq < lower_sq || norm_sq >= upper_sq) continue;
    if (region_intersects(ball, pair, params.delta, config)) found.push_back(pair);
  }
  for (const FractionPair& pair : found) {
    if (pair.quotient() != found.front().quotient()) {
      throw InvariantViolation("two dangerous fractions in block " + std::to_string(n) + ": " +
                               to_string(found.front().quotient()) + " and " + to_string(pair.quotient()));
    }
  }
  return found;
}

namespace {

std::optional<DangerPair> canonical_pair(const std::vector<FractionPair>& pairs, const PrimeConfig& config) {
  if (pairs.empty()) return std::nullopt;
  auto key = [&](const FractionPair& p) {
    const Rational& g = p.denominator.value();
    return std::make_tuple(diag_norm(g, config), sgn(g) < 0, abs(g));
  };
  const auto best = std::min_element(pairs.begin(), pairs.end(),
                                     [&](const FractionPair& a, const FractionPair& b) { return key(a) < key(b); });
  return DangerPair{best->numerator, best->denominator, best->quotient()};
}

}  // namespace

std::optional<DangerPair> find_danger_pair(const Ball& ball, long n, const StrategyParams& params) {
  return canonical_pair(find_danger_pairs(ball, n, params), params.config);
}

std::string to_string(AliceCase c) {
  switch (c) {
    case AliceCase::Preamble: return "preamble";
    case AliceCase::Clear: return "clear";
    case AliceCase::Archimedean: return "case1";
    case AliceCase::Padic: return "case2";
    case AliceCase::Combined: return "combined";
  }
  return "unknown";
}

SolenoidPoint WinningStrategy::pushed(const Ball& bob, const Rational& radius, Side side) const {
  SolenoidPoint center = bob.center();
  const Rational slack = bob.radius() - radius;
  center.arch() += side == Side::Right ? slack : Rational(-slack);
  return center;
}

Rational padic_dodge(const Rational& b, const Rational& rho, const Rational& q, Prime p) {
  const Rational coarse = rho / Rational(Integer(p));
  const long m = effective_padic_radius(coarse, p).exponent;
  const Rational sub = prime_power(p, -(m + 1));
  for (const Rational& rep : padic_subball_representatives(b, coarse, p)) {
    if (padic_abs(rep - q, p) > sub) return rep;
  }
  throw InvariantViolation("every p-adic subball contains the target");
}

namespace {

// Index of the place where |gamma| is attained: i for p_i, config.size() for
// infinity. Ties go to infinity.
std::size_t norm_place(const Rational& gamma, const PrimeConfig& config) {
  const Rational norm = diag_norm(gamma, config);
  if (arch_abs(gamma) == norm) return config.size();
  std::size_t i = 0;
  while (padic_abs(gamma, config[i]) != norm) ++i;
  return i;
}

}  // namespace

Proposal WinningStrategy::open_block(const Ball& bob, const Rational& radius) {
  const PrimeConfig& config = params_.config;
  const long n = state_.block;
  if (!block_invariant_radius_check(params_, n)) {
    throw InvariantViolation("block radius check failed at block " + std::to_string(n));
  }
  state_.pairs = find_danger_pairs(bob, n, params_);
  state_.pair = canonical_pair(state_.pairs, config);

  Notes notes = {{"block", std::to_string(n)}, {"step", "1"}, {"pairs", std::to_string(state_.pairs.size())}};
  state_.push_arch = false;
  if (!state_.pair) {
    state_.current = AliceCase::Clear;
    history_.push_back({n, state_.current, {}});
    notes.emplace_back("case", to_string(state_.current));
    return {bob.center(), std::move(notes)};
  }

  const DangerPair& pair = *state_.pair;
  const Rational& q = pair.quotient;
  state_.side = q <= bob.center().arch() ? Side::Right : Side::Left;
  notes.emplace_back("beta", to_string(pair.beta.value()));
  notes.emplace_back("gamma", to_string(pair.gamma.value()));
  notes.emplace_back("quotient", to_string(q));

  // Places to dodge at, as indices into (p_1, ..., p_k, infinity).
  const std::size_t arch = config.size();
  std::vector<bool> dodge(config.size() + 1, false);
  if (mode_ == AliceMode::Literal) {
    dodge[norm_place(pair.gamma.value(), config)] = true;
  } else {
    for (const FractionPair& fp : state_.pairs) dodge[norm_place(fp.denominator.value(), config)] = true;
  }

  auto move_for = [&](const std::vector<bool>& places) {
    SolenoidPoint center = places[arch] ? pushed(bob, radius, state_.side) : bob.center();
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (!places[i]) continue;
      const Prime p = config[i];
      center.padic(i) = padic_dodge(bob.center().padic(i), bob.radius(), q, p);
      if (radius + padic_abs(center.padic(i) - bob.center().padic(i), p) > bob.radius()) {
        throw InvariantViolation("p-adic move exceeds the legality margin");
      }
    }
    return center;
  };
  auto clears_all = [&](const SolenoidPoint& c) {
    const Ball mine(c, radius);
    return std::none_of(state_.pairs.begin(), state_.pairs.end(), [&](const FractionPair& fp) {
      return region_intersects(mine, fp, params_.delta, config);
    });
  };

  SolenoidPoint center = move_for(dodge);
  // An Archimedean push clears its region only after t moves; with t = 1 it is checked here.
  const bool checkable = !dodge[arch] || params_.t == 1;
  if (checkable && !clears_all(center)) {
    std::fill(dodge.begin(), dodge.end(), true);
    center = move_for(dodge);
    if (!clears_all(center)) throw InvariantViolation("combined move leaves a dangerous region");
  }

  const auto places = std::count(dodge.begin(), dodge.end(), true);
  state_.push_arch = dodge[arch];
  state_.current = places > 1 ? AliceCase::Combined : dodge[arch] ? AliceCase::Archimedean : AliceCase::Padic;
  if (dodge[arch]) notes.emplace_back("side", state_.side == Side::Right ? "right" : "left");
  std::string primes;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!dodge[i]) continue;
    if (!primes.empty()) primes += ",";
    primes += std::to_string(config[i]);
  }
  if (!primes.empty()) notes.emplace_back("primes", primes);
  history_.push_back({n, state_.current, state_.pairs});
  notes.emplace_back("case", to_string(state_.current));
  return {std::move(center), std::move(notes)};
}

Proposal WinningStrategy::propose(const Transcript& t, const Rational& radius) {
  const Ball& bob = t.back().ball;
  const std::size_t j = Transcript::index_at(t.size());
  const std::size_t s = params_.preamble_length();
  if (j < s) {
    state_.in_preamble = true;
    state_.current = AliceCase::Preamble;
    return {bob.center(), {{"case", to_string(AliceCase::Preamble)}}};
  }
  state_.in_preamble = false;
  const std::size_t rel = j - s;
  const auto tt = static_cast<std::size_t>(params_.t);
  state_.block = static_cast<long>(rel / tt) + 1;
  state_.step = static_cast<long>(rel % tt) + 1;
  if (state_.step == 1) return open_block(bob, radius);

  Notes notes = {{"block", std::to_string(state_.block)}, {"step", std::to_string(state_.step)}};
  if (state_.push_arch) {
    notes.emplace_back("case", to_string(state_.current));
    SolenoidPoint center = pushed(bob, radius, state_.side);
    return {std::move(center), std::move(notes)};
  }
  notes.emplace_back("case", to_string(state_.current));
  return {bob.center(), std::move(notes)};
}

}  // namespace solenoid
