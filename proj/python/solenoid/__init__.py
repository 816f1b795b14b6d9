"""Exact arithmetic on the p-adic solenoid and Schmidt games played on it.

Rationals go in and come out as "num/den" strings. Points are sequences of
component strings in the order (arch, p_1, ..., p_k).
"""

import json

from ._core import (
    InvariantViolation,
    __version__,
    diag_norm,
    min_diagonal_distance,
    padic_abs,
    padic_valuation,
    run_cli,
)
from . import _core

__all__ = [
    "InvariantViolation",
    "__version__",
    "certify",
    "compute_params",
    "diag_norm",
    "dim_lower_bound",
    "dirichlet",
    "min_diagonal_distance",
    "padic_abs",
    "padic_valuation",
    "run_cli",
    "simulate",
]

DEFAULT_PRIMES = (2, 3)


def certify(center, delta, gamma_bound, radius=None, primes=DEFAULT_PRIMES):
    """Certificate for a ball (when radius is given) or a point."""
    return json.loads(_core._certify(list(center), radius, delta, gamma_bound, list(primes)))


def dirichlet(point, n, primes=DEFAULT_PRIMES):
    return json.loads(_core._dirichlet(list(point), n, list(primes)))


def dim_lower_bound(alpha, beta, primes=DEFAULT_PRIMES):
    return json.loads(_core._dim_lower_bound(alpha, beta, list(primes)))


def compute_params(beta, rho0, primes=DEFAULT_PRIMES):
    return json.loads(_core._compute_params(beta, rho0, list(primes)))


def simulate(beta, rho0, primes=DEFAULT_PRIMES, blocks=1, bob="concentric", seed=0, extra_balls=0,
             mode="all-places"):
    """Alice against the given Bob; returns params, per-block certificates and the transcript."""
    return json.loads(_core._simulate(beta, rho0, list(primes), blocks, bob, seed, extra_balls, mode))
