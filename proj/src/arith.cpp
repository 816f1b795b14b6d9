#include "solenoid/arith.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace solenoid {

namespace {

void require_prime(Prime p) {
  if (!is_prime(p)) {
    throw ConfigError("not a prime: " + std::to_string(p));
  }
}

Integer mod_non_negative(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer inv;
  if (m == 1) return 0;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw InvariantViolation("modular inverse does not exist");
  }
  return inv;
}

// Residue of a p-integral rational modulo p^precision.
Integer padic_residue(const Rational& q, Prime p, long precision) {
  const Integer modulus = prime_power(p, precision).get_num();
  if (modulus == 1) return 0;
  return mod_non_negative(q.get_num() * mod_inverse(q.get_den(), modulus), modulus);
}

}  // namespace

bool is_prime(Prime p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (Prime d = 3; d <= p / d; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

PrimeConfig::PrimeConfig(std::vector<Prime> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw ConfigError("prime list must be nonempty");
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    require_prime(primes_[i]);
    if (i > 0 && primes_[i] == primes_[i - 1]) {
      throw ConfigError("duplicate prime: " + std::to_string(primes_[i]));
    }
  }
}

Integer PrimeConfig::product() const {
  Integer prod = 1;
  for (Prime p : primes_) prod *= p;
  return prod;
}

bool PrimeConfig::contains(Prime p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

SElement::SElement(Rational value, const PrimeConfig& config) : value_(std::move(value)) {
  if (!is_s_element(value_, config)) {
    throw ParameterError("not in Z[1/P]: " + to_string(value_));
  }
}

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw ParameterError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num_text(text.substr(0, slash));
  const std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  auto valid = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!valid(num_text) || !valid(den_text)) {
    throw ParameterError("malformed rational: '" + std::string(text) + "'");
  }
  auto strip_plus = [](const std::string& s) { return s[0] == '+' ? s.substr(1) : s; };
  const Integer num(strip_plus(num_text), 10);
  const Integer den(strip_plus(den_text), 10);
  if (den == 0) throw ParameterError("zero denominator: '" + std::string(text) + "'");
  return ratio(num, den);
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer round_half_up(const Rational& q) { return floor(q + Rational(1, 2)); }

Integer ceil_sqrt(const Rational& q) {
  if (sgn(q) <= 0) return 0;
  const Integer c = ceil(q);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), c.get_mpz_t());
  while (Rational(root * root) < q) ++root;
  while (root > 0 && Rational((root - 1) * (root - 1)) >= q) --root;
  return root;
}

Rational power(const Rational& base, long exponent) {
  Integer num, den;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  return exponent < 0 ? ratio(den, num) : ratio(num, den);
}

Rational prime_power(Prime p, long exponent) {
  Integer pe;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
  return exponent < 0 ? Rational(Integer(1), pe) : Rational(pe);
}

long floor_log(const Rational& x, Prime p) {
  if (sgn(x) <= 0) throw ParameterError("floor_log needs a positive argument");
  long num_exp = 0, den_exp = 0;
  const double num_m = mpz_get_d_2exp(&num_exp, x.get_num_mpz_t());
  const double den_m = mpz_get_d_2exp(&den_exp, x.get_den_mpz_t());
  const double log2x = std::log2(num_m) - std::log2(den_m) + static_cast<double>(num_exp - den_exp);
  long e = static_cast<long>(std::floor(log2x / std::log2(static_cast<double>(p))));
  while (prime_power(p, e) > x) --e;
  while (prime_power(p, e + 1) <= x) ++e;
  return e;
}

long integer_valuation(const Integer& n, Prime p) {
  if (n == 0) throw ParameterError("valuation of zero integer");
  Integer rest;
  const Integer pz(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

Valuation padic_valuation(const Rational& q, Prime p) {
  require_prime(p);
  if (sgn(q) == 0) return PositiveInfinity{};
  return integer_valuation(q.get_num(), p) - integer_valuation(q.get_den(), p);
}

Rational padic_abs(const Rational& q, Prime p) {
  const Valuation v = padic_valuation(q, p);
  if (std::holds_alternative<PositiveInfinity>(v)) return 0;
  return prime_power(p, -std::get<long>(v));
}

Rational arch_abs(const Rational& q) { return abs(q); }

bool is_s_element(const Rational& q, const PrimeConfig& config) {
  Integer rest = q.get_den();
  for (Prime p : config.primes()) {
    const Integer pz(p);
    mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
  }
  return rest == 1;
}

Rational diag_norm(const Rational& g, const PrimeConfig& config) {
  Rational norm = arch_abs(g);
  if (sgn(g) == 0) return norm;
  for (Prime p : config.primes()) {
    const Rational a = padic_abs(g, p);
    if (a > norm) norm = a;
  }
  return norm;
}

Rational diag_norm(const SElement& g, const PrimeConfig& config) {
  return diag_norm(g.value(), config);
}

std::vector<SElement> enumerate_s_elements(const PrimeConfig& config, const Rational& bound) {
  std::vector<SElement> out;
  if (bound < 1) return out;
  // Every a/D has |a/D|_p <= p^{floor(log_p bound)} <= bound, so only the
  // Archimedean bound filters.
  Integer D = 1;
  for (Prime p : config.primes()) D *= prime_power(p, floor_log(bound, p)).get_num();
  const Integer limit = floor(bound * D);
  std::vector<std::tuple<Rational, Integer, Rational>> keyed;
  for (Integer a = -limit; a <= limit; ++a) {
    if (a == 0) continue;
    Rational g = ratio(a, D);
    Rational norm = diag_norm(g, config);
    Integer num = g.get_num();
    keyed.emplace_back(std::move(norm), std::move(num), std::move(g));
  }
  std::sort(keyed.begin(), keyed.end());
  out.reserve(keyed.size());
  for (auto& [norm, num, g] : keyed) out.emplace_back(std::move(g), config);
  return out;
}

CongruenceSolution congruence_solve(std::span<const CongruenceTarget> targets,
                                    const PrimeConfig& config) {
  if (targets.size() != config.size()) {
    throw UsageError("congruence_solve needs one target per prime");
  }
  // beta = b / E with E clearing every negative valuation involved.
  Integer E = 1;
  std::vector<long> scale(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Prime p = config[i];
    long lowest = targets[i].precision;
    const Valuation v = padic_valuation(targets[i].residue, p);
    if (const long* vl = std::get_if<long>(&v)) lowest = std::min(lowest, *vl);
    scale[i] = std::max(0L, -lowest);
    E *= prime_power(p, scale[i]).get_num();
  }
  Integer b = 0;
  Integer modulus = 1;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const Prime p = config[i];
    const long M = targets[i].precision + integer_valuation(E, p);
    if (M <= 0) continue;
    const Integer pm = prime_power(p, M).get_num();
    const Integer r = padic_residue(targets[i].residue * E, p, M);
    // b = b (mod modulus), b = r (mod pm)
    const Integer k = mod_non_negative((r - b) * mod_inverse(modulus, pm), pm);
    b += modulus * k;
    modulus *= pm;
  }
  Rational g = 1;
  for (std::size_t i = 0; i < config.size(); ++i) g *= prime_power(config[i], targets[i].precision);
  Rational base = ratio(b, E);
  base -= g * Rational(floor(base / g));
  return {SElement(std::move(base), config), std::move(g)};
}

}  // namespace solenoid
