#include "solenoid/simulate.hpp"

namespace solenoid {

BobSpec BobSpec::parse(std::string_view text) {
  BobSpec spec;
  const std::size_t colon = text.find(':');
  spec.kind = std::string(text.substr(0, colon));
  if (spec.kind == "targeting") {
    if (colon == std::string_view::npos) throw UsageError("targeting needs a target, e.g. targeting:1/3");
    spec.target = parse_rational(text.substr(colon + 1));
  } else if (spec.kind != "concentric" && spec.kind != "random") {
    throw UsageError("unknown bob '" + std::string(text) + "' (concentric, random, targeting:<q>)");
  } else if (colon != std::string_view::npos) {
    throw UsageError("bob '" + spec.kind + "' takes no argument");
  }
  return spec;
}

std::string BobSpec::describe() const {
  if (kind == "targeting") return "targeting:" + to_string(target);
  return kind;
}

std::unique_ptr<Strategy> make_bob(const BobSpec& spec, std::uint64_t seed) {
  if (spec.kind == "random") return random_bob(seed);
  if (spec.kind == "targeting") return targeting_bob(spec.target);
  if (spec.kind == "replay") return replay_bob(spec.script);
  return concentric_player();
}

bool SimulationResult::success() const {
  if (outcome.aborted() || fault) return false;
  for (const BlockReport& b : blocks) {
    if (!b.certificate.verdict) return false;
    if (b.next_certificate && !b.next_certificate->verdict) return false;
  }
  return true;
}

namespace {

// Lets the game run stop cleanly when Alice's strategy faults.
class Guarded final : public Strategy {
 public:
  Guarded(Strategy& inner, std::optional<std::string>& fault) : inner_(inner), fault_(fault) {}

  Proposal propose(const Transcript& t, const Rational& radius) override {
    if (fault_) return {t.back().ball.center(), {}};
    try {
      return inner_.propose(t, radius);
    } catch (const InvariantViolation& e) {
      fault_ = e.what();
      return {t.back().ball.center(), {{"fault", e.what()}}};
    }
  }

 private:
  Strategy& inner_;
  std::optional<std::string>& fault_;
};

}  // namespace

SimulationResult simulate(const SimulationConfig& cfg) {
  if (cfg.blocks < 1) throw ParameterError("blocks must be >= 1");
  if (cfg.extra_bob_balls < 0) throw ParameterError("extra_bob_balls must be >= 0");
  const StrategyParams params = compute_params(cfg.beta, cfg.rho0, cfg.config);
  const SolenoidPoint center = cfg.center.value_or(SolenoidPoint::diagonal(0, cfg.config.size()));
  check_rank(center, cfg.config);

  WinningStrategy alice(params, cfg.mode);
  std::optional<std::string> fault;
  Guarded guarded(alice, fault);
  std::unique_ptr<Strategy> bob = make_bob(cfg.bob, cfg.seed);

  const std::size_t last_bob = params.block_certified_index(cfg.blocks) + static_cast<std::size_t>(cfg.extra_bob_balls);
  SimulationResult result{params,
                          run_game(guarded, *bob, 2 * last_bob + 1, Ball(center, cfg.rho0), params.game_params()),
                          {},
                          fault};
  const Transcript& t = result.outcome.transcript;
  for (long n = 1; n <= cfg.blocks; ++n) {
    const std::size_t idx = params.block_certified_index(n);
    if (idx >= t.bob_count()) break;
    const GammaBound bound = GammaBound::below_root(power(params.rsq, n));
    BlockReport report{n, AliceCase::Clear, {}, idx,
                       certify_bad_on_ball(t.bob_ball(idx), params.delta, bound, params.config), std::nullopt};
    for (const BlockRecord& rec : alice.history()) {
      if (rec.block == n) {
        report.alice_case = rec.alice_case;
        report.pairs = rec.pairs;
      }
    }
    if (idx + 1 < t.bob_count()) {
      report.next_certificate = certify_bad_on_ball(t.bob_ball(idx + 1), params.delta, bound, params.config);
    }
    result.blocks.push_back(std::move(report));
  }
  return result;
}

}  // namespace solenoid
