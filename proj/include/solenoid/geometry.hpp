#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "solenoid/arith.hpp"

namespace solenoid {

/// A rational point (x_inf, x_p1, ..., x_pk) of Q_P. The p-adic components are
/// rationals read inside Q_{p_i}; nothing ties them to the Archimedean one.
class SolenoidPoint {
 public:
  SolenoidPoint() = default;
  SolenoidPoint(Rational arch, std::vector<Rational> padic)
      : arch_(std::move(arch)), padic_(std::move(padic)) {}

  /// iota(q) = (q, q, ..., q) with `rank` p-adic slots.
  static SolenoidPoint diagonal(const Rational& q, std::size_t rank);

  const Rational& arch() const { return arch_; }
  Rational& arch() { return arch_; }
  const Rational& padic(std::size_t i) const { return padic_[i]; }
  Rational& padic(std::size_t i) { return padic_[i]; }
  std::span<const Rational> padic() const { return padic_; }
  std::size_t rank() const { return padic_.size(); }

  /// Componentwise product g * x.
  SolenoidPoint scaled(const Rational& g) const;

  friend SolenoidPoint operator+(const SolenoidPoint& a, const SolenoidPoint& b);
  friend SolenoidPoint operator-(const SolenoidPoint& a, const SolenoidPoint& b);
  friend bool operator==(const SolenoidPoint&, const SolenoidPoint&) = default;

 private:
  Rational arch_{0};
  std::vector<Rational> padic_;
};

/// Closed sup-norm ball B(center, radius), radius > 0.
class Ball {
 public:
  Ball(SolenoidPoint center, Rational radius);

  const SolenoidPoint& center() const { return center_; }
  const Rational& radius() const { return radius_; }

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  SolenoidPoint center_;
  Rational radius_;
};

SolenoidPoint diagonal_embedding(const SElement& g, const PrimeConfig& config);

/// Throws UsageError unless every point has one p-adic slot per prime.
void check_rank(const SolenoidPoint& x, const PrimeConfig& config);

Rational sup_dist(const SolenoidPoint& x, const SolenoidPoint& y, const PrimeConfig& config);
Rational sup_norm(const SolenoidPoint& x, const PrimeConfig& config);

/// (x1, r1) < (x2, r2) iff r1 + d(x1, x2) <= r2.
bool precedes(const SolenoidPoint& x1, const Rational& r1, const SolenoidPoint& x2,
              const Rational& r2, const PrimeConfig& config);
bool precedes(const Ball& inner, const Ball& outer, const PrimeConfig& config);

/// Set containment inner within outer, evaluated per component.
bool ball_contains(const Ball& outer, const Ball& inner, const PrimeConfig& config);
/// Closed balls share a point.
bool balls_intersect(const Ball& a, const Ball& b, const PrimeConfig& config);
/// Open Archimedean intervals disjoint, or p-adic balls disjoint, in some component.
bool interiors_disjoint(const Ball& a, const Ball& b, const PrimeConfig& config);

/// p-adic balls only see radii p^{-m}: the largest such power <= rho.
struct EffectiveRadius {
  Rational radius;  // p^{-exponent}
  long exponent = 0;
};
EffectiveRadius effective_padic_radius(const Rational& rho, Prime p);

/// c + j p^m, j = 0..p-1, where p^{-m} = effective radius of rho. The balls of
/// radius p^{-(m+1)} around them partition the ball of radius p^{-m} around c.
std::vector<Rational> padic_subball_representatives(const Rational& c, const Rational& rho, Prime p);

struct LatticeReduction {
  SolenoidPoint reduced;  // in [0,1) x Z_p1 x ... x Z_pk
  SElement shift;         // y = reduced + iota(shift)
};
LatticeReduction reduce_mod_lattice(const SolenoidPoint& y, const PrimeConfig& config);
bool in_fundamental_domain(const SolenoidPoint& y, const PrimeConfig& config);

struct DiagonalDistance {
  Rational distance;
  SElement minimizer;  // smallest |beta|_inf among minimizers, then positive
};
/// Exact min over beta in Z[1/P] of |y - iota(beta)|.
DiagonalDistance min_diagonal_distance(const SolenoidPoint& y, const PrimeConfig& config);

/// floor(1/beta) * prod_j p_j^{floor(log_pj(1/beta)) - 1}.
Integer packing_count(const Rational& beta, const PrimeConfig& config);
/// 1 / (2 (p_1...p_k)^2 beta^{k+1}).
Rational packing_lower_bound(const Rational& beta, const PrimeConfig& config);

/// packing_count(beta) balls of radius beta*rho, pairwise disjoint interiors,
/// each (x_i, beta*rho) < (center, rho). Requires 0 < beta < 1/2.
std::vector<Ball> packing_construct(const Ball& parent, const Rational& beta,
                                    const PrimeConfig& config);

}  // namespace solenoid
