#include "solenoid/close_pairs.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

namespace solenoid {

namespace {

struct LatticeVector {
  Integer a;  // gamma = a / D
  Integer b;  // beta = b / E
  Rational u;
  Rational w;
};

Rational norm2(const LatticeVector& v) { return v.u * v.u + v.w * v.w; }

LatticeVector combine(const LatticeVector& x, const Integer& mu, const LatticeVector& y) {
  // x - mu * y
  return {x.a - mu * y.a, x.b - mu * y.b, x.u - Rational(mu) * y.u, x.w - Rational(mu) * y.w};
}

void lagrange_reduce(LatticeVector& v1, LatticeVector& v2) {
  for (;;) {
    if (norm2(v2) < norm2(v1)) std::swap(v1, v2);
    const Integer mu = round_half_up((v1.u * v2.u + v1.w * v2.w) / norm2(v1));
    if (mu == 0) break;
    v2 = combine(v2, mu, v1);
  }
}

Integer positive_mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Least m with p^{-m} < r.
long strict_threshold(const Rational& r, Prime p) {
  const long e = floor_log(r, p);
  return prime_power(p, e) == r ? -e + 1 : -e;
}

// Narrows [lo, hi] to the i with |i * c1 + j * c2| <= 1. False when empty.
bool clip(const Rational& c1, const Rational& c2, const Integer& j, std::optional<Integer>& lo,
          std::optional<Integer>& hi) {
  const Rational offset = Rational(j) * c2;
  if (sgn(c1) == 0) return abs(offset) <= 1;
  Rational a = (-1 - offset) / c1;
  Rational b = (1 - offset) / c1;
  if (a > b) std::swap(a, b);
  lo = lo ? std::max(*lo, ceil(a)) : ceil(a);
  hi = hi ? std::min(*hi, floor(b)) : floor(b);
  return *lo <= *hi;
}

}  // namespace

std::vector<FractionPair> close_fraction_pairs(const SolenoidPoint& x, const Rational& gamma_cap,
                                               const Rational& radius, const PrimeConfig& config) {
  check_rank(x, config);
  std::vector<FractionPair> out;
  if (gamma_cap < 1 || sgn(radius) <= 0) return out;

  const std::size_t k = config.size();
  Integer D = 1, E = 1;
  std::vector<long> cap_exp(k), close_exp(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Prime p = config[i];
    cap_exp[i] = floor_log(gamma_cap, p);
    close_exp[i] = strict_threshold(radius, p);
    long beta_floor = close_exp[i];
    const Valuation vx = padic_valuation(x.padic(i), p);
    if (const long* v = std::get_if<long>(&vx)) beta_floor = std::min(beta_floor, *v - cap_exp[i]);
    D *= prime_power(p, cap_exp[i]).get_num();
    E *= prime_power(p, std::max(0L, -beta_floor)).get_num();
  }

  // v_p(a u E - b D w) >= M_p with x_p = u / w; combine over p by CRT into
  // A a == B b (mod N).
  Integer A = 0, B = 0, N = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const Prime p = config[i];
    const Integer& u = x.padic(i).get_num();
    const Integer& w = x.padic(i).get_den();
    const long M = close_exp[i] + integer_valuation(D, p) + integer_valuation(E, p) + integer_valuation(w, p);
    if (M <= 0) continue;
    const Integer pm = prime_power(p, M).get_num();
    const Integer Ap = positive_mod(u * E, pm);
    const Integer Bp = positive_mod(D * w, pm);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), N.get_mpz_t(), pm.get_mpz_t());
    A += N * positive_mod((Ap - A) * inv, pm);
    B += N * positive_mod((Bp - B) * inv, pm);
    N *= pm;
  }
  A = positive_mod(A, N);
  B = positive_mod(B, N);

  Integer g1, gA;
  mpz_gcd(g1.get_mpz_t(), B.get_mpz_t(), N.get_mpz_t());
  mpz_gcd(gA.get_mpz_t(), A.get_mpz_t(), g1.get_mpz_t());
  const Integer a0 = g1 / gA;
  const Integer rest = N / g1;
  Integer b1 = 0;
  if (rest != 1) {
    Integer inv;
    const Integer Bred = B / g1;
    mpz_invert(inv.get_mpz_t(), Bred.get_mpz_t(), rest.get_mpz_t());
    b1 = positive_mod((A * a0 / g1) * inv, rest);
  }

  // Rescale: u = gamma / cap, w = (gamma x_inf - beta) / radius.
  const Rational& xa = x.arch();
  auto make = [&](const Integer& a, const Integer& b) {
    const Rational gamma = ratio(a, D);
    const Rational beta = ratio(b, E);
    return LatticeVector{a, b, gamma / gamma_cap, (gamma * xa - beta) / radius};
  };
  LatticeVector v1 = make(a0, b1);
  LatticeVector v2 = make(0, rest);
  lagrange_reduce(v1, v2);

  const Rational det = v1.u * v2.w - v1.w * v2.u;
  const Integer J = floor((abs(v1.u) + abs(v1.w)) / abs(det));
  std::vector<std::tuple<Rational, Rational, Rational>> found;
  for (Integer j = -J; j <= J; ++j) {
    std::optional<Integer> lo, hi;
    if (!clip(v1.u, v2.u, j, lo, hi) || !clip(v1.w, v2.w, j, lo, hi)) continue;
    if (!lo) throw InvariantViolation("close_fraction_pairs: degenerate basis");
    for (Integer i = *lo; i <= *hi; ++i) {
      const Integer a = i * v1.a + j * v2.a;
      if (a == 0) continue;
      const Integer b = i * v1.b + j * v2.b;
      Rational gamma = ratio(a, D);
      Rational beta = ratio(b, E);
      if (arch_abs(gamma) > gamma_cap) continue;
      const SolenoidPoint diff = x.scaled(gamma) - SolenoidPoint::diagonal(beta, k);
      if (sup_norm(diff, config) >= radius) continue;
      found.emplace_back(diag_norm(gamma, config), std::move(gamma), std::move(beta));
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  out.reserve(found.size());
  for (auto& [norm, gamma, beta] : found) {
    out.push_back({SElement(std::move(beta), config), SElement(std::move(gamma), config)});
  }
  return out;
}

}  // namespace solenoid
