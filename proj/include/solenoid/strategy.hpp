#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "solenoid/arith.hpp"
#include "solenoid/close_pairs.hpp"
#include "solenoid/game.hpp"
#include "solenoid/geometry.hpp"

namespace solenoid {

/// Constants of Alice's winning strategy for the badly approximable set.
///
/// alpha = min 1/p_i^2, c = 1 + alpha beta - 2 alpha, t the unique integer with
/// alpha beta c / 2 <= (alpha beta)^t < c / 2, R^2 = (alpha beta)^{-t} and
/// delta = min{alpha, c/2} * min{rho0, alpha^2 beta^2 c / 8}. R itself is never
/// formed; all norm comparisons are made on squares.
struct StrategyParams {
  PrimeConfig config;
  Rational alpha;
  Rational beta;
  Rational c;
  Rational delta;
  long t = 1;
  Rational rsq;
  Rational rho0;

  Rational contraction() const { return alpha * beta; }
  /// alpha beta c / 8: Bob balls above this radius are played through concentrically.
  Rational preamble_threshold() const;
  /// Index s of the first Bob ball with radius <= preamble_threshold().
  std::size_t preamble_length() const;
  /// rho0 (alpha beta)^j.
  Rational bob_radius(std::size_t j) const;

  /// Block n >= 1 opens at Bob ball s + (n-1) t and guards the gammas with
  /// rsq^{n-1} <= |gamma|^2 < rsq^n. After the block every point of Bob ball
  /// s + n t (and of everything nested inside it) is delta-bad for |gamma|^2 < rsq^n.
  std::size_t block_opening_index(long n) const;
  std::size_t block_certified_index(long n) const;

  GameParams game_params() const { return GameParams(alpha, beta, config); }
};

Rational winning_alpha(const PrimeConfig& config);

/// Requires 0 < beta < 1 and rho0 > 0.
StrategyParams compute_params(const Rational& beta, const Rational& rho0, const PrimeConfig& config);

/// delta / rsq^{n-1} <= alpha * rho_{opening(n)}: every dangerous region is
/// thin enough, in the coordinate where |gamma| is attained, for one Alice move
/// to clear it.
bool block_invariant_radius_check(const StrategyParams& params, long n);

struct DangerPair {
  SElement beta;
  SElement gamma;
  Rational quotient;  // beta / gamma, lowest terms
};

/// Whether {x : |x_v - beta/gamma|_v < delta / (|gamma|_v |gamma|) for all v}
/// meets the closed ball.
bool region_intersects(const Ball& ball, const FractionPair& pair, const Rational& delta,
                       const PrimeConfig& config);

/// All (beta, gamma) in block n's norm range whose region meets `ball`. Throws
/// InvariantViolation if two of them have different quotients.
std::vector<FractionPair> find_danger_pairs(const Ball& ball, long n, const StrategyParams& params);

/// The canonical dangerous pair: least |gamma|, then gamma > 0, then least gamma.
std::optional<DangerPair> find_danger_pair(const Ball& ball, long n, const StrategyParams& params);

/// First of the p subballs of B(b, rho/p), radius rho/p^2 each, that misses q.
Rational padic_dodge(const Rational& b, const Rational& rho, const Rational& q, Prime p);

enum class AliceCase { Preamble, Clear, Archimedean, Padic, Combined };
std::string to_string(AliceCase c);

enum class Side { Left, Right };

/// Literal: dodge only at the place where the canonical pair's |gamma| is
/// attained, widening to every place if a region is left touching.
/// AllPlaces: dodge at every place where some dangerous pair's |gamma| is
/// attained, so the uniform |gamma| rho slack of certify_bad_on_ball is met.
enum class AliceMode { Literal, AllPlaces };

/// Per-game state of Alice's strategy, refreshed at every block start.
struct AliceState {
  long block = 0;
  long step = 0;  // 1..t inside the block
  bool in_preamble = true;
  AliceCase current = AliceCase::Preamble;
  Side side = Side::Right;
  bool push_arch = false;  // repeat the Archimedean push on later steps of the block
  std::optional<DangerPair> pair;
  std::vector<FractionPair> pairs;
};

/// What Alice found and did at the start of one block.
struct BlockRecord {
  long block = 0;
  AliceCase alice_case = AliceCase::Clear;
  std::vector<FractionPair> pairs;
};

/// Alice's strategy. Every proposal carries notes (block, step, case, pair).
class WinningStrategy final : public Strategy {
 public:
  explicit WinningStrategy(StrategyParams params, AliceMode mode = AliceMode::AllPlaces)
      : params_(std::move(params)), mode_(mode) {}

  Proposal propose(const Transcript& t, const Rational& radius) override;

  const StrategyParams& params() const { return params_; }
  const AliceState& state() const { return state_; }
  const std::vector<BlockRecord>& history() const { return history_; }

 private:
  SolenoidPoint pushed(const Ball& bob, const Rational& radius, Side side) const;
  Proposal open_block(const Ball& bob, const Rational& radius);

  StrategyParams params_;
  AliceMode mode_;
  AliceState state_;
  std::vector<BlockRecord> history_;
};

}  // namespace solenoid
