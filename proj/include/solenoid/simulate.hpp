#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solenoid/game.hpp"
#include "solenoid/strategy.hpp"
#include "solenoid/verify.hpp"

namespace solenoid {

/// Which adversary Bob plays: "concentric", "random" (uses the run seed),
/// "targeting:<q>" or a fixed script of centers.
struct BobSpec {
  std::string kind = "concentric";
  Rational target;
  std::vector<SolenoidPoint> script;

  static BobSpec parse(std::string_view text);
  std::string describe() const;
};

std::unique_ptr<Strategy> make_bob(const BobSpec& spec, std::uint64_t seed);

struct SimulationConfig {
  PrimeConfig config;
  Rational beta;
  Rational rho0;
  long blocks = 1;
  BobSpec bob;
  std::uint64_t seed = 0;
  std::optional<SolenoidPoint> center;  // defaults to the origin
  /// Bob balls played past the last certified one. With 1, the ball right
  /// after each certified ball is certified too.
  long extra_bob_balls = 0;
  AliceMode mode = AliceMode::AllPlaces;
};

struct BlockReport {
  long block = 0;
  AliceCase alice_case = AliceCase::Clear;
  std::vector<FractionPair> pairs;
  std::size_t certified_index = 0;
  Certificate certificate;
  std::optional<Certificate> next_certificate;
};

struct SimulationResult {
  StrategyParams params;
  GameOutcome outcome;
  std::vector<BlockReport> blocks;
  /// Set when Alice's strategy raised InvariantViolation instead of moving.
  std::optional<std::string> fault;

  /// No abort, no fault, every certificate true.
  bool success() const;
};

SimulationResult simulate(const SimulationConfig& cfg);

}  // namespace solenoid
