#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "solenoid/arith.hpp"

using namespace solenoid;

namespace {

const PrimeConfig P2{{2}};
const PrimeConfig P23{{2, 3}};

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("padic_valuation") {
  CHECK(std::get<long>(padic_valuation(12, 2)) == 2);
  CHECK(std::get<long>(padic_valuation(q("9/4"), 3)) == 2);
  CHECK(std::get<long>(padic_valuation(q("9/4"), 2)) == -2);
  CHECK(std::holds_alternative<PositiveInfinity>(padic_valuation(0, 5)));
  CHECK_THROWS_AS(padic_valuation(12, 4), ConfigError);
  CHECK_THROWS_AS(padic_valuation(12, 1), ConfigError);
}

TEST_CASE("padic_abs") {
  CHECK(padic_abs(12, 2) == q("1/4"));
  CHECK(padic_abs(q("1/6"), 3) == 3);
  CHECK(padic_abs(0, 2) == 0);
  CHECK(padic_abs(7, 2) == 1);
}

TEST_CASE("arch_abs") {
  CHECK(arch_abs(q("-3/2")) == q("3/2"));
  CHECK(arch_abs(0) == 0);
  CHECK(arch_abs(7) == 7);
}

TEST_CASE("diag_norm") {
  CHECK(diag_norm(q("1/6"), P23) == 3);
  CHECK(diag_norm(5, P23) == 5);
  CHECK(diag_norm(q("4/3"), P23) == 3);
  CHECK(diag_norm(0, P23) == 0);
  CHECK(diag_norm(SElement(q("1/8"), P2), P2) == 8);
}

TEST_CASE("is_s_element") {
  CHECK(is_s_element(q("7/12"), P23));
  CHECK_FALSE(is_s_element(q("1/5"), P23));
  CHECK(is_s_element(0, P2));
  CHECK_THROWS_AS(SElement(q("1/5"), P23), ParameterError);
}

TEST_CASE("PrimeConfig validation") {
  CHECK_THROWS_AS(PrimeConfig({}), ConfigError);
  CHECK_THROWS_AS(PrimeConfig({2, 4}), ConfigError);
  CHECK_THROWS_AS(PrimeConfig({3, 3}), ConfigError);
  const PrimeConfig c({5, 2, 3});
  CHECK(c[0] == 2);
  CHECK(c[2] == 5);
  CHECK(c.max_prime() == 5);
  CHECK(c.product() == 30);
  CHECK(c.contains(3));
  CHECK_FALSE(c.contains(7));
}

TEST_CASE("parse_rational and to_string") {
  CHECK(parse_rational("6/4") == q("3/2"));
  CHECK(parse_rational("-5") == -5);
  CHECK(to_string(parse_rational("0")) == "0/1");
  CHECK(to_string(parse_rational("4/-6")) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("abc"), ParameterError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParameterError);
  CHECK_THROWS_AS(parse_rational(""), ParameterError);
}

TEST_CASE("rounding helpers") {
  CHECK(floor(q("-1/2")) == -1);
  CHECK(ceil(q("-1/2")) == 0);
  CHECK(round_half_up(q("1/2")) == 1);
  CHECK(round_half_up(q("-1/2")) == 0);
  CHECK(ceil_sqrt(18) == 5);
  CHECK(ceil_sqrt(16) == 4);
  CHECK(ceil_sqrt(q("1/4")) == 1);
  CHECK(floor_log(q("1/3"), 2) == -2);
  CHECK(floor_log(8, 2) == 3);
  CHECK(power(q("2/3"), -2) == q("9/4"));
}

TEST_CASE("enumerate_s_elements examples") {
  const auto two = enumerate_s_elements(P2, 2);
  std::set<Rational> got;
  for (const SElement& g : two) got.insert(g.value());
  CHECK(got == std::set<Rational>{q("-2"), q("-3/2"), q("-1"), q("-1/2"), q("1/2"), q("1"), q("3/2"), q("2")});
  CHECK(two.size() == 8);
  CHECK(enumerate_s_elements(P2, 1).size() == 2);
  CHECK(enumerate_s_elements(P23, q("1/2")).empty());
}

TEST_CASE("enumerate_s_elements order") {
  const auto list = enumerate_s_elements(P23, 4);
  for (std::size_t i = 1; i < list.size(); ++i) {
    const Rational a = diag_norm(list[i - 1], P23), b = diag_norm(list[i], P23);
    CHECK(a <= b);
    if (a == b) CHECK(list[i - 1].value().get_num() <= list[i].value().get_num());
  }
}

TEST_CASE("enumerate_s_elements agrees with the double loop") {
  for (const auto& primes : std::vector<std::vector<Prime>>{{2}, {3}, {5}, {2, 3}, {2, 5}, {3, 5}, {2, 3, 5}}) {
    const PrimeConfig config(primes);
    for (const char* b : {"1", "3/2", "2", "5", "8"}) {
      std::set<Rational> got;
      for (const SElement& g : enumerate_s_elements(config, q(b))) {
        CHECK(got.insert(g.value()).second);
      }
      CHECK(got == oracle::enumerate(config, q(b)));
    }
  }
}

TEST_CASE("gammas with |gamma|^2 < 18 for P = {2,3}") {
  std::size_t count = 0;
  for (const SElement& g : enumerate_s_elements(P23, 5)) {
    const Rational n = diag_norm(g, P23);
    if (n * n < 18) ++count;
  }
  CHECK(count == 100);
}

TEST_CASE("congruence_solve examples") {
  {
    const std::vector<CongruenceTarget> t{{q("1/2"), 1}};
    const auto s = congruence_solve(t, P2);
    CHECK(s.base.value() == q("1/2"));
    CHECK(s.modulus == 2);
  }
  {
    const std::vector<CongruenceTarget> t{{0, 1}, {0, 1}};
    const auto s = congruence_solve(t, P23);
    CHECK(s.base.value() == 0);
    CHECK(s.modulus == 6);
  }
  {
    const std::vector<CongruenceTarget> t{{q("1/2"), 0}, {0, 1}};
    const auto s = congruence_solve(t, P23);
    CHECK(s.modulus == 3);
    CHECK(padic_abs(s.base.value() - q("1/2"), 2) <= 1);
    CHECK(padic_abs(s.base.value(), 3) <= q("1/3"));
  }
  const std::vector<CongruenceTarget> wrong{{0, 1}};
  CHECK_THROWS_AS(congruence_solve(wrong, P23), UsageError);
}

TEST_CASE("congruence_solve solution set is exactly base + g Z") {
  std::mt19937_64 rng(11);
  const std::vector<long> dens{1, 2, 3, 4, 6, 9, 12, 5, 7};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CongruenceTarget> t;
    for (std::size_t i = 0; i < P23.size(); ++i) {
      t.push_back({oracle::random_rational(rng, 40, dens), static_cast<long>(rng() % 5) - 2});
    }
    const auto s = congruence_solve(t, P23);
    // Exhaustive over beta = a/36 with |beta| <= 4: membership iff in the coset.
    for (long a = -144; a <= 144; ++a) {
      const Rational beta = solenoid::ratio(a, 36);
      bool ok = true;
      for (std::size_t i = 0; i < P23.size(); ++i) {
        const Rational target = power(Rational(P23[i]), -t[i].precision);
        ok = ok && oracle::abs_p(beta - t[i].residue, P23[i]) <= target;
      }
      const Rational k = (beta - s.base.value()) / s.modulus;
      CHECK(ok == (k.get_den() == 1));
    }
  }
}

TEST_CASE("ultrametric law on random pairs") {
  std::mt19937_64 rng(1);
  const std::vector<long> dens{1, 2, 3, 4, 5, 6, 8, 9, 12, 25, 27, 7, 11};
  for (int i = 0; i < 10000; ++i) {
    const Rational a = oracle::random_rational(rng, 1000, dens);
    const Rational b = oracle::random_rational(rng, 1000, dens);
    for (Prime p : {2UL, 3UL, 5UL}) {
      const Rational x = padic_abs(a, p), y = padic_abs(b, p), s = padic_abs(a + b, p);
      REQUIRE(s <= std::max(x, y));
      if (x != y) REQUIRE(s == std::max(x, y));
      REQUIRE(padic_abs(a * b, p) == x * y);
      REQUIRE(x == oracle::abs_p(a, p));
    }
  }
}

TEST_CASE("diag_norm >= 1 on every enumerated nonzero gamma") {
  for (const auto& primes : std::vector<std::vector<Prime>>{{2}, {2, 3}, {2, 3, 5}}) {
    const PrimeConfig config(primes);
    for (const SElement& g : enumerate_s_elements(config, 10)) REQUIRE(diag_norm(g, config) >= 1);
  }
}
