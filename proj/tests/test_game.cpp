#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "solenoid/game.hpp"

using namespace solenoid;

namespace {

const PrimeConfig P23{{2, 3}};
const GameParams kParams(Rational(1, 9), Rational(1, 2), P23);

Transcript opened(const Rational& rho0) {
  Transcript t(kParams, rho0);
  t.append({Role::Bob, 0, Ball(SolenoidPoint::diagonal(0, 2), rho0)});
  return t;
}

void check_nested(const Transcript& t) {
  for (std::size_t i = 1; i < t.size(); ++i) {
    REQUIRE(ball_contains(t.moves()[i - 1].ball, t.moves()[i].ball, t.config()));
    REQUIRE(precedes(t.moves()[i].ball, t.moves()[i - 1].ball, t.config()));
  }
}

void check_schedule(const Transcript& t) {
  const Rational ab = t.params().alpha * t.params().beta;
  for (std::size_t ply = 0; ply < t.size(); ++ply) {
    const Rational bob = t.rho0() * power(ab, static_cast<long>(ply / 2));
    REQUIRE(t.moves()[ply].ball.radius() == (ply % 2 == 0 ? bob : t.params().alpha * bob));
  }
}

}  // namespace

TEST_CASE("GameParams validation") {
  CHECK_THROWS_AS(GameParams(0, Rational(1, 2), P23), ParameterError);
  CHECK_THROWS_AS(GameParams(Rational(1, 2), 1, P23), ParameterError);
}

TEST_CASE("legal_move clauses") {
  const Transcript t = opened(1);
  const Rational alice_r(1, 9);
  CHECK(legal_move(t, {Role::Alice, 0, Ball(SolenoidPoint::diagonal(0, 2), alice_r)}));

  SolenoidPoint far = SolenoidPoint::diagonal(0, 2);
  far.arch() += Rational(8, 9) + 1;
  const Legality bad = legal_move(t, {Role::Alice, 0, Ball(far, alice_r)});
  REQUIRE_FALSE(bad);
  CHECK(bad.violation->clause == Violation::Clause::Precedence);

  const Legality wrong_role = legal_move(t, {Role::Bob, 1, Ball(SolenoidPoint::diagonal(0, 2), alice_r)});
  REQUIRE_FALSE(wrong_role);
  CHECK(wrong_role.violation->clause == Violation::Clause::Alternation);

  Transcript t2 = t;
  t2.append({Role::Alice, 0, Ball(SolenoidPoint::diagonal(0, 2), alice_r)});
  const Legality wrong_radius =
      legal_move(t2, {Role::Bob, 1, Ball(SolenoidPoint::diagonal(0, 2), alice_r * Rational(1, 4))});
  REQUIRE_FALSE(wrong_radius);
  CHECK(wrong_radius.violation->clause == Violation::Clause::Radius);
}

TEST_CASE("concentric play follows the forced schedule") {
  auto alice = concentric_player();
  auto bob = concentric_player();
  const Rational rho0(1, 4000);
  const Ball b0(SolenoidPoint::diagonal(Rational(1, 7), 2), rho0);
  const GameOutcome out = run_game(*alice, *bob, 5, b0, kParams);
  REQUIRE_FALSE(out.aborted());
  const Transcript& t = out.transcript;
  REQUIRE(t.size() == 5);
  const Rational a(1, 9), ab(1, 18);
  CHECK(t.moves()[0].ball.radius() == rho0);
  CHECK(t.moves()[1].ball.radius() == a * rho0);
  CHECK(t.moves()[2].ball.radius() == ab * rho0);
  CHECK(t.moves()[3].ball.radius() == a * ab * rho0);
  CHECK(t.moves()[4].ball.radius() == ab * ab * rho0);
  const IntersectionEstimate est = intersection_estimate(t);
  CHECK(est.center == b0.center());
  CHECK(est.radius == ab * ab * rho0);
  CHECK(revalidate(t));
}

TEST_CASE("run_game rejects zero plies and empty estimates") {
  auto p = concentric_player();
  CHECK_THROWS_AS(run_game(*p, *p, 0, Ball(SolenoidPoint::diagonal(0, 2), 1), kParams), ParameterError);
  CHECK_THROWS_AS(intersection_estimate(Transcript(kParams, 1)), UsageError);
}

TEST_CASE("random Bob is legal, nested and reproducible") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto alice = concentric_player();
    auto bob1 = random_bob(seed);
    auto bob2 = random_bob(seed);
    const Ball b0(SolenoidPoint::diagonal(0, 2), 1);
    const GameOutcome a = run_game(*alice, *bob1, 21, b0, kParams);
    const GameOutcome b = run_game(*alice, *bob2, 21, b0, kParams);
    REQUIRE_FALSE(a.aborted());
    check_schedule(a.transcript);
    check_nested(a.transcript);
    REQUIRE(revalidate(a.transcript));
    for (std::size_t i = 0; i < a.transcript.size(); ++i) REQUIRE(a.transcript.moves()[i].ball == b.transcript.moves()[i].ball);
    // Estimates at earlier plies contain the later ones.
    for (std::size_t i = 0; i + 1 < a.transcript.size(); ++i) {
      const Ball& early = a.transcript.moves()[i].ball;
      const Ball& last = a.transcript.back().ball;
      REQUIRE(sup_dist(early.center(), last.center(), P23) <= early.radius());
    }
  }
  auto alice = concentric_player();
  auto b1 = random_bob(1), b2 = random_bob(2);
  const Ball b0(SolenoidPoint::diagonal(0, 2), 1);
  CHECK_FALSE(run_game(*alice, *b1, 5, b0, kParams).transcript.moves()[2].ball ==
              run_game(*alice, *b2, 5, b0, kParams).transcript.moves()[2].ball);
}

TEST_CASE("targeting Bob steers toward the target") {
  auto alice = concentric_player();
  auto bob = targeting_bob(0);
  SolenoidPoint start = SolenoidPoint::diagonal(0, 2);
  start.arch() = Rational(1, 20);
  const Ball b0(start, 1);
  const GameOutcome out = run_game(*alice, *bob, 9, b0, kParams);
  REQUIRE_FALSE(out.aborted());
  Rational previous = sup_dist(start, SolenoidPoint::diagonal(0, 2), P23);
  for (std::size_t n = 1; n < out.transcript.bob_count(); ++n) {
    const Rational d = sup_dist(out.transcript.bob_ball(n).center(), SolenoidPoint::diagonal(0, 2), P23);
    CHECK(d <= previous);
    previous = d;
  }
  CHECK(previous == 0);
}

TEST_CASE("replay Bob reproduces a legal script and aborts on an illegal one") {
  const Ball b0(SolenoidPoint::diagonal(0, 2), 1);
  SolenoidPoint c1 = SolenoidPoint::diagonal(0, 2);
  c1.arch() += Rational(1, 20);
  SolenoidPoint c2 = c1;
  c2.arch() -= Rational(1, 400);
  auto alice = concentric_player();
  auto bob = replay_bob({c1, c2});
  const GameOutcome ok = run_game(*alice, *bob, 5, b0, kParams);
  REQUIRE_FALSE(ok.aborted());
  CHECK(ok.transcript.bob_ball(1).center() == c1);
  CHECK(ok.transcript.bob_ball(2).center() == c2);

  SolenoidPoint wild = SolenoidPoint::diagonal(0, 2);
  wild.arch() = 5;
  auto bad = replay_bob({wild});
  const GameOutcome aborted = run_game(*alice, *bad, 5, b0, kParams);
  REQUIRE(aborted.aborted());
  CHECK(aborted.violation->ply == 2);
  CHECK(aborted.violation->clause == Violation::Clause::Precedence);
  CHECK(aborted.transcript.size() == 2);
}

TEST_CASE("revalidate catches a tampered transcript") {
  auto p = concentric_player();
  GameOutcome out = run_game(*p, *p, 3, Ball(SolenoidPoint::diagonal(0, 2), 1), kParams);
  Transcript tampered(kParams, 1);
  for (std::size_t i = 0; i < out.transcript.size(); ++i) {
    Move m = out.transcript.moves()[i];
    if (i == 2) m.ball = Ball(m.ball.center(), m.ball.radius() * 2);
    tampered.append(m);
  }
  const Legality l = revalidate(tampered);
  REQUIRE_FALSE(l);
  CHECK(l.violation->ply == 2);
  CHECK(l.violation->clause == Violation::Clause::Radius);
}
