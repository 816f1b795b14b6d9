// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "solenoid/cli.hpp"
#include "solenoid/simulate.hpp"

using namespace solenoid;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational q(const char* s) { return parse_rational(s); }

const PrimeConfig P2{{2}};
const PrimeConfig P23{{2, 3}};

// Every block report of every AC-1/AC-2 run, for the uniqueness check.
std::vector<BlockReport> g_blocks;
long g_runs = 0;

std::string describe_failure(const SimulationResult& r, const std::string& label) {
  if (r.outcome.violation) return label + ": referee abort at ply " + std::to_string(r.outcome.violation->ply);
  if (r.fault) return label + ": " + *r.fault;
  for (const BlockReport& b : r.blocks) {
    if (!b.certificate.verdict) return label + ": block " + std::to_string(b.block) + " certificate false";
    if (b.next_certificate && !b.next_certificate->verdict) {
      return label + ": ball after block " + std::to_string(b.block) + " certificate false";
    }
  }
  return label + ": incomplete";
}

// The certificate inequality over every gamma of the double loop, no pruning.
bool exhaustive_verdict(const Certificate& c, const PrimeConfig& config) {
  const Ball& b = std::get<Ball>(c.subject);
  for (const Rational& g : oracle::enumerate(config, c.gamma_bound.cap())) {
    const Rational n = oracle::norm(g, config);
    if (!c.gamma_bound.admits(n)) continue;
    if (min_diagonal_distance(b.center().scaled(g), config).distance - n * b.radius() < c.delta / n) return false;
  }
  return true;
}

bool check_run(const SimulationResult& r, long blocks) {
  if (!r.success() || r.blocks.size() != static_cast<std::size_t>(blocks)) return false;
  for (const BlockReport& b : r.blocks) {
    if (!b.next_certificate) return false;
  }
  return true;
}

std::vector<std::string> ac1_bobs() {
  std::vector<std::string> bobs{"targeting:0", "targeting:1/3", "targeting:1/2"};
  for (int s = 1; s <= 10; ++s) bobs.push_back("random#" + std::to_string(s));
  return bobs;
}

SimulationConfig ac1_config(const std::string& bob) {
  SimulationConfig cfg{P23, q("1/2"), q("1/4000"), 3, BobSpec{}, 0, std::nullopt, 1};
  if (bob.rfind("random#", 0) == 0) {
    cfg.bob = BobSpec::parse("random");
    cfg.seed = std::stoull(bob.substr(7));
  } else {
    cfg.bob = BobSpec::parse(bob);
  }
  return cfg;
}

Outcome ac1() {
  Outcome o;
  long certs = 0;
  double slowest = 0;
  for (const std::string& bob : ac1_bobs()) {
    const auto t0 = std::chrono::steady_clock::now();
    const SimulationResult r = simulate(ac1_config(bob));
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    ++g_runs;
    g_blocks.insert(g_blocks.end(), r.blocks.begin(), r.blocks.end());
    if (!check_run(r, 3)) {
      o.pass = false;
      o.detail = describe_failure(r, bob);
      return o;
    }
    if (r.params.delta != q("1/36000") || r.params.t != 1 || r.params.rsq != 18) {
      o.pass = false;
      o.detail = "unexpected parameters";
      return o;
    }
    for (const BlockReport& b : r.blocks) {
      if (b.block > 2) continue;
      if (!exhaustive_verdict(b.certificate, P23) || !exhaustive_verdict(*b.next_certificate, P23)) {
        o.pass = false;
        o.detail = bob + ": exhaustive re-check disagrees in block " + std::to_string(b.block);
        return o;
      }
    }
    certs += 6;
  }
  std::ostringstream s;
  s << ac1_bobs().size() << " games, " << certs << " certificates true, blocks 1-2 re-checked over every gamma, slowest game "
    << slowest << " s";
  o.detail = s.str();
  return o;
}

Outcome ac2() {
  Outcome o;
  long certs = 0;
  for (const PrimeConfig& config : {P2, PrimeConfig({3}), PrimeConfig({2, 3, 5})}) {
    for (const char* beta : {"1/2", "1/3", "1/5"}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SimulationConfig cfg{config, q(beta), q("1/4000"), 2, BobSpec::parse("random"), seed, std::nullopt, 1};
        const SimulationResult r = simulate(cfg);
        ++g_runs;
        g_blocks.insert(g_blocks.end(), r.blocks.begin(), r.blocks.end());
        if (!check_run(r, 2)) {
          o.pass = false;
          std::ostringstream label;
          label << "P=" << config.size() << " primes, beta " << beta << ", seed " << seed;
          o.detail = describe_failure(r, label.str());
          return o;
        }
        certs += 4;
      }
    }
  }
  o.detail = "45 games, " + std::to_string(certs) + " certificates true, no aborts";
  return o;
}

Outcome ac3() {
  std::mt19937_64 rng(20240601);
  auto component = [&] {
    const long num = static_cast<long>(rng() % 20001) - 10000;
    const long den = static_cast<long>(rng() % 10000) + 1;
    return ratio(num, den);
  };
  long searches = 0;
  for (int i = 0; i < 100; ++i) {
    const SolenoidPoint raw(component(), {component(), component()});
    const SolenoidPoint x = reduce_mod_lattice(raw, P23).reduced;
    if (!in_fundamental_domain(x, P23)) return {false, "reduction left F"};
    for (long N = 1; N <= 40; ++N) {
      DirichletResult r{SElement(0, P23), SElement(0, P23), 0, 0};
      try {
        r = dirichlet_search(x, N, P23);
      } catch (const InvariantViolation& e) {
        return {false, e.what()};
      }
      ++searches;
      const Rational exact = min_diagonal_distance(x.scaled(r.gamma.value()), P23).distance;
      const Rational direct = oracle::dist_to(x.scaled(r.gamma.value()), r.beta.value(), P23);
      const Rational norm = diag_norm(r.gamma, P23);
      if (exact != r.distance || direct != r.distance || r.distance > ratio(3, N) || norm > N || sgn(norm) == 0) {
        return {false, "point " + std::to_string(i) + ", N = " + std::to_string(N)};
      }
    }
  }
  return {true, std::to_string(searches) + " searches, all within 3/N"};
}

Outcome ac4() {
  long violations = 0, with_pairs = 0;
  for (const BlockReport& b : g_blocks) {
    if (!b.pairs.empty()) ++with_pairs;
    for (const FractionPair& p : b.pairs) {
      if (p.quotient() != b.pairs.front().quotient()) ++violations;
    }
  }
  if (g_runs == 0) return {false, "no runs recorded"};
  std::ostringstream s;
  s << g_blocks.size() << " blocks over " << g_runs << " runs, " << with_pairs << " with pairs, " << violations
    << " violations";
  return {violations == 0, s.str()};
}

Outcome ac5() {
  long balls_checked = 0;
  for (const PrimeConfig& config : {P2, P23}) {
    const Ball parent(SolenoidPoint::diagonal(0, config.size()), 1);
    for (const char* b : {"1/4", "1/8", "1/10"}) {
      const Rational beta = q(b);
      const std::vector<Ball> balls = packing_construct(parent, beta, config);
      Rational product = 1;
      for (Prime p : config.primes()) product *= p;
      const Rational bound = 1 / (2 * product * product * power(beta, static_cast<long>(config.size()) + 1));
      if (Rational(static_cast<unsigned long>(balls.size())) < bound) {
        return {false, std::string("count below bound at beta ") + b};
      }
      for (std::size_t i = 0; i < balls.size(); ++i) {
        if (balls[i].radius() != beta * parent.radius() || !precedes(balls[i], parent, config)) {
          return {false, std::string("ball not preceding at beta ") + b};
        }
        for (std::size_t j = i + 1; j < balls.size(); ++j) {
          if (!interiors_disjoint(balls[i], balls[j], config)) return {false, std::string("overlap at beta ") + b};
        }
      }
      balls_checked += static_cast<long>(balls.size());
    }
  }
  return {true, std::to_string(balls_checked) + " balls over 6 families"};
}

Outcome ac6() {
  std::mt19937_64 rng(66);
  const std::vector<long> dens{1, 2, 3, 4, 6, 8, 9, 12, 5, 7};
  long preceding = 0;
  for (const PrimeConfig& config : {P2, P23}) {
    for (int i = 0; i < 10000; ++i) {
      std::vector<Rational> padic;
      for (std::size_t k = 0; k < config.size(); ++k) padic.push_back(oracle::random_rational(rng, 50, dens));
      const Ball outer(SolenoidPoint(oracle::random_rational(rng, 50, dens), padic),
                       ratio(static_cast<long>(rng() % 64 + 1), static_cast<long>(rng() % 64 + 1)));
      SolenoidPoint c = outer.center();
      const Rational shift = outer.radius() * ratio(static_cast<long>(rng() % 5), 4);
      c.arch() += rng() % 2 == 0 ? shift : Rational(-shift);
      for (std::size_t k = 0; k < config.size(); ++k) c.padic(k) += shift * static_cast<long>(rng() % 3);
      const Ball inner(c, outer.radius() * ratio(static_cast<long>(rng() % 8 + 1), 8));
      if (precedes(inner, outer, config)) {
        ++preceding;
        if (!ball_contains(outer, inner, config)) return {false, "precedes without containment"};
      }
    }
  }
  const Ball outer(SolenoidPoint(0, {Rational(0)}), 1), inner(SolenoidPoint(0, {Rational(1)}), 1);
  if (!ball_contains(outer, inner, P2) || precedes(inner, outer, P2)) return {false, "regression witness"};
  return {true, "20000 pairs, " + std::to_string(preceding) + " preceding, witness holds"};
}

Outcome ac7() {
  std::mt19937_64 rng(77);
  const std::vector<long> dens{1, 2, 3, 4, 6, 8, 9, 12, 18, 5, 7, 25, 49};
  const std::vector<std::vector<Prime>> configs{{2}, {3}, {2, 3}, {2, 5}};
  int checked = 0, attempts = 0;
  while (checked < 100) {
    ++attempts;
    const PrimeConfig config(configs[checked % configs.size()]);
    std::vector<Rational> padic;
    for (std::size_t k = 0; k < config.size(); ++k) padic.push_back(oracle::random_rational(rng, 30, dens));
    const SolenoidPoint y(oracle::random_rational(rng, 30, dens), padic);
    if (!oracle::window_valid(y, config)) continue;
    const auto o = oracle::brute_min_distance(y, config);
    const auto d = min_diagonal_distance(y, config);
    if (d.distance != o.distance || d.minimizer.value() != o.minimizer) {
      return {false, "mismatch on input " + std::to_string(checked)};
    }
    ++checked;
  }
  return {true, "100 inputs equal (" + std::to_string(attempts - checked) + " rejected by the window check)"};
}

Outcome ac8() {
  const double ln10 = std::log(10.0);
  Rational beta(1, 10);
  double previous = -1e300, last = 0, worst = 0;
  for (int e = 1; e <= 20; ++e) {
    const double v = dim_lower_bound(q("1/9"), beta, P23).value;
    const double expect = (-std::log(2.0) - 2 * std::log(6.0) + 3 * e * ln10) / (std::log(9.0) + e * ln10);
    worst = std::max(worst, std::fabs(v - expect) / std::fabs(expect));
    if (!(v > previous)) return {false, "not increasing at 10^-" + std::to_string(e)};
    previous = last = v;
    beta /= 10;
  }
  std::ostringstream s;
  s.precision(12);
  s << "strictly increasing, bound at 10^-20 = " << last << ", worst relative error " << worst;
  return {last >= 2.7 && worst <= 1e-9, s.str()};
}

std::string cli_output(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str();
}

Outcome ac9() {
  long compared = 0;
  for (const std::string& bob : ac1_bobs()) {
    std::vector<std::string> args{"simulate", "--primes", "2,3", "--beta", "1/2", "--rho0", "1/4000", "--blocks", "3",
                                  "--extra-balls", "1"};
    if (bob.rfind("random#", 0) == 0) {
      args.insert(args.end(), {"--bob", "random", "--seed", bob.substr(7)});
    } else {
      args.insert(args.end(), {"--bob", bob});
    }
    const std::string a = cli_output(args), b = cli_output(args);
    if (a.empty() || a != b) return {false, "outputs differ for " + bob};
    ++compared;
  }
  return {true, std::to_string(compared) + " reruns byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC-1 strategy soundness", ac1},    {"AC-2 parameter robustness", ac2},
      {"AC-3 dirichlet", ac3},             {"AC-4 danger-pair uniqueness", ac4},
      {"AC-5 packing and counting", ac5},  {"AC-6 order and containment", ac6},
      {"AC-7 oracle equivalence", ac7},    {"AC-8 dimension bound", ac8},
      {"AC-9 determinism", ac9},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " [" << secs << " s] " << o.detail << "\n";
  }
  return all ? 0 : 1;
}
