"""Gauge-invariant profiles and the monoidal-equivalence classification.

Equivalence is decided exactly: two solutions (r, kappa) and (r', kappa')
are equivalent iff kappa = kappa' and g(r') lies in the square orbit of r.
The X-tuples are diagnostic output only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numtheory import count_classes, factorize, g_reduce, half_unit_group, square_orbit
from .params import Params, params_problem, valid_r


@dataclass(frozen=True)
class InvariantProfile:
    kappa: int
    x_tuple: tuple[float, ...]
    orbit: frozenset[int]


def x_value(p: int, r: int, i: int) -> float:
    n = 2 * p + 1
    # (-1)^(i^2) = (-1)^i; i^2 r reduced mod 2n keeps the argument small
    return (-1) ** i * math.cos(math.pi * ((i * i * r) % (2 * n)) / n)


def invariant_profile(params: Params) -> InvariantProfile:
    p, r = params.p, params.r
    xs = tuple(x_value(p, r, i) for i in range(p + 1))
    return InvariantProfile(params.kappa, xs, square_orbit(r, params.n))


def equivalent(first: tuple[int, int], second: tuple[int, int], p: int) -> bool:
    """Whether (r, kappa) and (r', kappa') give monoidally equivalent categories."""
    for r, kappa in (first, second):
        problem = params_problem(p, r, kappa)
        if problem:
            raise ValueError(problem)
    (r1, k1), (r2, k2) = first, second
    return k1 == k2 and g_reduce(r2, 2 * p + 1) in square_orbit(r1, 2 * p + 1)


def enumerate_classes(p: int) -> list[tuple[int, int]]:
    """One representative (smallest r) per class, kappa = +1 classes first."""
    n = 2 * p + 1
    reps = []
    for kappa in (1, -1):
        seen: set[int] = set()
        for r in valid_r(p):
            g = g_reduce(r, n)
            if g not in seen:
                seen |= square_orbit(r, n)
                reps.append((r, kappa))
    return reps


def orbits(p: int) -> list[tuple[int, ...]]:
    """The distinct square orbits in the half-unit group, sorted."""
    n = 2 * p + 1
    return sorted({tuple(sorted(square_orbit(r, n))) for r in half_unit_group(n)})


def classification_summary(p: int) -> dict:
    n = 2 * p + 1
    reps = enumerate_classes(p)
    return {
        "p": p,
        "n": n,
        "factorization": {str(q): e for q, e in sorted(factorize(n).items())},
        "orbits": [list(o) for o in orbits(p)],
        "representatives": [{"r": r, "kappa": k} for r, k in reps],
        "count": len(reps),
        "count_formula": count_classes(n),
    }
