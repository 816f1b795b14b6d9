#pragma once

#include <vector>

#include "solenoid/arith.hpp"
#include "solenoid/geometry.hpp"

namespace solenoid {

/// A lattice fraction beta/gamma with beta, gamma in Z[1/P].
struct FractionPair {
  SElement numerator;    // beta
  SElement denominator;  // gamma, nonzero
  Rational quotient() const { return numerator.value() / denominator.value(); }
  friend bool operator==(const FractionPair&, const FractionPair&) = default;
};

/// Every (beta, gamma) with gamma != 0, |gamma|_v <= gamma_cap at every place v,
/// and |gamma x_v - beta|_v < radius at every place v.
///
/// The admissible (gamma, beta) form a rank-2 lattice: gamma lives in (1/D)Z with
/// D = prod p^{floor(log_p cap)}, beta in (1/E)Z, and the p-adic closeness
/// conditions are congruences on the integer coordinates. The Archimedean
/// conditions cut out a box; after rescaling the box to a square the lattice is
/// Lagrange-reduced and its points in the square are listed line by line, so the
/// cost tracks the output size rather than the number of gammas below the cap.
///
/// Result is sorted by (diag_norm(gamma), gamma, beta).
std::vector<FractionPair> close_fraction_pairs(const SolenoidPoint& x, const Rational& gamma_cap,
                                               const Rational& radius, const PrimeConfig& config);

}  // namespace solenoid
