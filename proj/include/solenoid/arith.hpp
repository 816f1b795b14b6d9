#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace solenoid {

using Integer = mpz_class;
using Rational = mpq_class;
using Prime = unsigned long;

/// Bad prime lists, non-prime arguments.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Out-of-range numeric parameters (beta >= 1/2 for packing, malformed rationals, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mixing points/configs of different rank.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical guarantee failed at runtime. Never expected to fire.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PositiveInfinity {
  friend bool operator==(PositiveInfinity, PositiveInfinity) = default;
};

/// v_p(q): an integer exponent, or +infinity for q = 0.
using Valuation = std::variant<long, PositiveInfinity>;

bool is_prime(Prime p);

/// The finite prime set P = {p_1 < ... < p_k}.
class PrimeConfig {
 public:
  /// Sorts the input; throws ConfigError on an empty list, duplicates or composites.
  explicit PrimeConfig(std::vector<Prime> primes);

  std::span<const Prime> primes() const { return primes_; }
  Prime operator[](std::size_t i) const { return primes_[i]; }
  std::size_t size() const { return primes_.size(); }
  Prime max_prime() const { return primes_.back(); }
  Integer product() const;
  bool contains(Prime p) const;

  friend bool operator==(const PrimeConfig&, const PrimeConfig&) = default;

 private:
  std::vector<Prime> primes_;
};

/// An element of Z[1/(p_1...p_k)]. Membership is checked on construction.
class SElement {
 public:
  SElement() = default;
  SElement(Rational value, const PrimeConfig& config);

  const Rational& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }

  friend bool operator==(const SElement& a, const SElement& b) { return a.value_ == b.value_; }

 private:
  Rational value_{0};
};

// Construction and formatting.
Rational ratio(const Integer& num, const Integer& den);
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
/// Nearest integer; halves round toward +infinity.
Integer round_half_up(const Rational& q);
/// Smallest non-negative integer g with g*g >= q.
Integer ceil_sqrt(const Rational& q);
/// base^exponent, exponent of either sign (base != 0 when exponent < 0).
Rational power(const Rational& base, long exponent);
Rational prime_power(Prime p, long exponent);
/// Largest e with p^e <= x, for x > 0.
long floor_log(const Rational& x, Prime p);

/// Exponent of p in a nonzero integer.
long integer_valuation(const Integer& n, Prime p);

Valuation padic_valuation(const Rational& q, Prime p);
/// p^(-v_p(q)), or 0 for q = 0.
Rational padic_abs(const Rational& q, Prime p);
Rational arch_abs(const Rational& q);

bool is_s_element(const Rational& q, const PrimeConfig& config);

/// max(|g|_inf, |g|_p1, ..., |g|_pk) of the diagonal embedding of g.
Rational diag_norm(const Rational& g, const PrimeConfig& config);
Rational diag_norm(const SElement& g, const PrimeConfig& config);

/// Every nonzero g in Z[1/(p_1...p_k)] with diag_norm(g) <= bound, ordered by
/// (diag_norm, numerator, value).
std::vector<SElement> enumerate_s_elements(const PrimeConfig& config, const Rational& bound);

/// One congruence target per prime of the config: v_{p_i}(beta - residue) >= precision.
struct CongruenceTarget {
  Rational residue;
  long precision = 0;
};

/// Solution set base + modulus * Z, with base in [0, modulus).
struct CongruenceSolution {
  SElement base;
  Rational modulus;
};

CongruenceSolution congruence_solve(std::span<const CongruenceTarget> targets,
                                    const PrimeConfig& config);

}  // namespace solenoid
