"""Exact covering-system toolkit for F_q[x].

Thin wrapper over the C++ core: exhaustive covering verification,
distortion-method non-covering certificates with exact rational arithmetic,
the explicit-constant bound engine, irreducible enumeration, and
backtracking search for covering systems with bounded multiplicity.
"""

from ._core import (
    CovercertError,
    certify,
    count_irreducibles,
    primes,
    search,
    series,
    threshold,
    uncovered,
    verify,
)

__all__ = [
    "CovercertError",
    "certify",
    "count_irreducibles",
    "primes",
    "search",
    "series",
    "threshold",
    "uncovered",
    "verify",
]

__version__ = "0.1.0"
