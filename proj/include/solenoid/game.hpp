#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solenoid/arith.hpp"
#include "solenoid/geometry.hpp"

namespace solenoid {

/// Schmidt (alpha, beta)-game on Q_P.
struct GameParams {
  GameParams(Rational alpha, Rational beta, PrimeConfig config);

  Rational alpha;
  Rational beta;
  PrimeConfig config;
};

enum class Role { Bob, Alice };
std::string to_string(Role role);

struct Move {
  Role role = Role::Bob;
  std::size_t index = 0;  // n of B_n / A_n
  Ball ball;
};

/// Free-form key/value diagnostics a strategy attaches to one ply.
using Notes = std::vector<std::pair<std::string, std::string>>;

struct Annotation {
  std::size_t ply = 0;
  Notes notes;
};

class Transcript {
 public:
  Transcript(GameParams params, Rational rho0);

  const GameParams& params() const { return params_; }
  const PrimeConfig& config() const { return params_.config; }
  const Rational& rho0() const { return rho0_; }
  const std::vector<Move>& moves() const { return moves_; }
  const std::vector<Annotation>& annotations() const { return annotations_; }
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }
  const Move& back() const { return moves_.back(); }

  /// Role and index of ply number `ply` (Bob plays even plies).
  static Role role_at(std::size_t ply) { return ply % 2 == 0 ? Role::Bob : Role::Alice; }
  static std::size_t index_at(std::size_t ply) { return ply / 2; }
  /// rho0 (ab)^n for B_n, alpha rho0 (ab)^n for A_n.
  Rational scheduled_radius(std::size_t ply) const;

  /// Bob's ball B_n. Throws std::out_of_range if not yet played.
  const Ball& bob_ball(std::size_t n) const;
  const Ball& alice_ball(std::size_t n) const;
  std::size_t bob_count() const { return (moves_.size() + 1) / 2; }

  /// Appends without checking. run_game and the JSON reader call legal_move first.
  void append(Move move) { moves_.push_back(std::move(move)); }
  void annotate(Annotation a) { annotations_.push_back(std::move(a)); }

 private:
  GameParams params_;
  Rational rho0_;
  std::vector<Move> moves_;
  std::vector<Annotation> annotations_;
};

struct Violation {
  enum class Clause { Alternation, Radius, Precedence };
  Clause clause;
  std::size_t ply = 0;
  std::string message;
};
std::string to_string(Violation::Clause clause);

struct Legality {
  std::optional<Violation> violation;
  explicit operator bool() const { return !violation.has_value(); }
};

/// Checks that `proposed` may extend `t` by one ply: (i) role and index
/// alternate, (ii) radius equals the schedule exactly, (iii) the new ball
/// precedes the previous one. For the first ply only (i) and radius == rho0 apply.
Legality legal_move(const Transcript& t, const Move& proposed);

/// Replays every ply of `t` through legal_move from an empty transcript.
Legality revalidate(const Transcript& t);

struct Proposal {
  SolenoidPoint center;
  Notes notes;
};

/// A player. Sees the transcript so far and the radius its ball must have;
/// returns a center. The referee checks the result.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual Proposal propose(const Transcript& t, const Rational& radius) = 0;
};

struct GameOutcome {
  Transcript transcript;
  std::optional<Violation> violation;
  bool aborted() const { return violation.has_value(); }
};

/// Plays `plies` balls starting from Bob's b0 (ply 0). Stops at the first illegal
/// proposal and reports it.
GameOutcome run_game(Strategy& alice, Strategy& bob, std::size_t plies, const Ball& b0,
                     const GameParams& params);

struct IntersectionEstimate {
  SolenoidPoint center;
  Rational radius;
};
/// Last ball of the transcript: the limit point lies within `radius` of `center`.
IntersectionEstimate intersection_estimate(const Transcript& t);

// Built-in players. They read the previous ball off the transcript, so they can
// play either role.

/// Always the previous center.
std::unique_ptr<Strategy> concentric_player();
/// Uniformly perturbed legal centers from a seeded mt19937_64.
std::unique_ptr<Strategy> random_bob(std::uint64_t seed);
/// Greedy: the legal center closest to iota(target), componentwise.
std::unique_ptr<Strategy> targeting_bob(Rational target);
/// Fixed centers, one per Bob move after B_0. Runs concentric once the script ends.
std::unique_ptr<Strategy> replay_bob(std::vector<SolenoidPoint> script);

}  // namespace solenoid
