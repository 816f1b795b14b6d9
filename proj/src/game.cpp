#include "solenoid/game.hpp"

#include <random>
#include <stdexcept>

namespace solenoid {

GameParams::GameParams(Rational alpha_, Rational beta_, PrimeConfig config_)
    : alpha(std::move(alpha_)), beta(std::move(beta_)), config(std::move(config_)) {
  if (sgn(alpha) <= 0 || alpha >= 1) throw ParameterError("alpha must lie in (0,1), got " + to_string(alpha));
  if (sgn(beta) <= 0 || beta >= 1) throw ParameterError("beta must lie in (0,1), got " + to_string(beta));
}

std::string to_string(Role role) { return role == Role::Bob ? "bob" : "alice"; }

std::string to_string(Violation::Clause clause) {
  switch (clause) {
    case Violation::Clause::Alternation: return "alternation";
    case Violation::Clause::Radius: return "radius";
    case Violation::Clause::Precedence: return "precedence";
  }
  return "unknown";
}

Transcript::Transcript(GameParams params, Rational rho0)
    : params_(std::move(params)), rho0_(std::move(rho0)) {
  if (sgn(rho0_) <= 0) throw ParameterError("rho0 must be positive");
}

Rational Transcript::scheduled_radius(std::size_t ply) const {
  const Rational bob = rho0_ * power(params_.alpha * params_.beta, static_cast<long>(index_at(ply)));
  return role_at(ply) == Role::Bob ? bob : params_.alpha * bob;
}

const Ball& Transcript::bob_ball(std::size_t n) const {
  if (2 * n >= moves_.size()) throw std::out_of_range("no Bob ball B_" + std::to_string(n));
  return moves_[2 * n].ball;
}

const Ball& Transcript::alice_ball(std::size_t n) const {
  if (2 * n + 1 >= moves_.size()) throw std::out_of_range("no Alice ball A_" + std::to_string(n));
  return moves_[2 * n + 1].ball;
}

Legality legal_move(const Transcript& t, const Move& proposed) {
  const std::size_t ply = t.size();
  if (proposed.role != Transcript::role_at(ply) || proposed.index != Transcript::index_at(ply)) {
    return {Violation{Violation::Clause::Alternation, ply,
                      "expected " + to_string(Transcript::role_at(ply)) + " move " +
                          std::to_string(Transcript::index_at(ply)) + ", got " + to_string(proposed.role) +
                          " move " + std::to_string(proposed.index)}};
  }
  if (proposed.ball.center().rank() != t.config().size()) {
    return {Violation{Violation::Clause::Precedence, ply, "center has the wrong number of components"}};
  }
  const Rational expected = t.scheduled_radius(ply);
  if (proposed.ball.radius() != expected) {
    return {Violation{Violation::Clause::Radius, ply,
                      "radius " + to_string(proposed.ball.radius()) + " != scheduled " + to_string(expected)}};
  }
  if (ply > 0 && !precedes(proposed.ball, t.back().ball, t.config())) {
    const Rational d = sup_dist(proposed.ball.center(), t.back().ball.center(), t.config());
    return {Violation{Violation::Clause::Precedence, ply,
                      "radius + distance " + to_string(proposed.ball.radius() + d) + " exceeds previous radius " +
                          to_string(t.back().ball.radius())}};
  }
  return {};
}

Legality revalidate(const Transcript& t) {
  Transcript replay(t.params(), t.rho0());
  for (const Move& m : t.moves()) {
    Legality ok = legal_move(replay, m);
    if (!ok) return ok;
    replay.append(m);
  }
  return {};
}

GameOutcome run_game(Strategy& alice, Strategy& bob, std::size_t plies, const Ball& b0,
                     const GameParams& params) {
  if (plies == 0) throw ParameterError("plies must be at least 1");
  GameOutcome out{Transcript(params, b0.radius()), std::nullopt};
  Transcript& t = out.transcript;
  for (std::size_t ply = 0; ply < plies; ++ply) {
    const Role role = Transcript::role_at(ply);
    const Rational radius = t.scheduled_radius(ply);
    Proposal proposal = ply == 0 ? Proposal{b0.center(), {}}
                                 : (role == Role::Bob ? bob : alice).propose(t, radius);
    Move move{role, Transcript::index_at(ply), Ball(std::move(proposal.center), radius)};
    Legality ok = legal_move(t, move);
    if (!ok) {
      out.violation = std::move(ok.violation);
      break;
    }
    t.append(std::move(move));
    if (!proposal.notes.empty()) t.annotate({ply, std::move(proposal.notes)});
  }
  return out;
}

IntersectionEstimate intersection_estimate(const Transcript& t) {
  if (t.empty()) throw UsageError("empty transcript");
  return {t.back().ball.center(), t.back().ball.radius()};
}

namespace {

class Concentric final : public Strategy {
 public:
  Proposal propose(const Transcript& t, const Rational&) override { return {t.back().ball.center(), {}}; }
};

class RandomPlayer final : public Strategy {
 public:
  explicit RandomPlayer(std::uint64_t seed) : engine_(seed) {}

  Proposal propose(const Transcript& t, const Rational& radius) override {
    const Ball& prev = t.back().ball;
    const Rational slack = prev.radius() - radius;
    SolenoidPoint c = prev.center();
    // Raw engine output (not std::uniform_*_distribution) keeps runs identical
    // across standard libraries.
    constexpr std::uint64_t kSteps = 1ULL << 20;
    const Integer u(static_cast<unsigned long>(engine_() % (kSteps + 1)));
    c.arch() += slack * ratio(2 * u - Integer(static_cast<unsigned long>(kSteps)),
                              Integer(static_cast<unsigned long>(kSteps)));
    const PrimeConfig& config = t.config();
    for (std::size_t i = 0; i < config.size(); ++i) {
      const Prime p = config[i];
      const Rational step = prime_power(p, effective_padic_radius(slack, p).exponent);
      const unsigned long span = prime_power(p, kPadicDigits).get_num().get_ui();
      c.padic(i) += step * Rational(Integer(static_cast<unsigned long>(engine_() % span)));
    }
    return {std::move(c), {}};
  }

 private:
  static constexpr long kPadicDigits = 6;
  std::mt19937_64 engine_;
};

class TargetingPlayer final : public Strategy {
 public:
  explicit TargetingPlayer(Rational target) : target_(std::move(target)) {}

  Proposal propose(const Transcript& t, const Rational& radius) override {
    const Ball& prev = t.back().ball;
    const Rational slack = prev.radius() - radius;
    SolenoidPoint c = prev.center();
    // The legal set is a product, so each coordinate is minimized on its own.
    const Rational gap = target_ - c.arch();
    if (abs(gap) <= slack) {
      c.arch() = target_;
    } else {
      c.arch() += sgn(gap) > 0 ? slack : Rational(-slack);
    }
    const PrimeConfig& config = t.config();
    for (std::size_t i = 0; i < config.size(); ++i) {
      // Outside the reachable p-adic ball every choice is equally far (ultrametric).
      if (padic_abs(target_ - c.padic(i), config[i]) <= slack) c.padic(i) = target_;
    }
    return {std::move(c), {}};
  }

 private:
  Rational target_;
};

class ReplayPlayer final : public Strategy {
 public:
  explicit ReplayPlayer(std::vector<SolenoidPoint> script) : script_(std::move(script)) {}

  Proposal propose(const Transcript& t, const Rational&) override {
    const std::size_t n = Transcript::index_at(t.size());
    if (n >= 1 && n - 1 < script_.size()) return {script_[n - 1], {}};
    return {t.back().ball.center(), {}};
  }

 private:
  std::vector<SolenoidPoint> script_;
};

}  // namespace

std::unique_ptr<Strategy> concentric_player() { return std::make_unique<Concentric>(); }
std::unique_ptr<Strategy> random_bob(std::uint64_t seed) { return std::make_unique<RandomPlayer>(seed); }
std::unique_ptr<Strategy> targeting_bob(Rational target) {
  return std::make_unique<TargetingPlayer>(std::move(target));
}
std::unique_ptr<Strategy> replay_bob(std::vector<SolenoidPoint> script) {
  return std::make_unique<ReplayPlayer>(std::move(script));
}

}  // namespace solenoid
