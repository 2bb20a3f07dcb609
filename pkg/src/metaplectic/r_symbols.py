"""Braiding data: R_{ab}^c = sigma1 * sigma2 * exp(i pi (h_a + h_b - h_c)).

The lambda = -1 braiding is the entrywise inverse of lambda = +1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .fusion_ring import EPS, ONE, FusionRing, build_ring
from .numtheory import g_reduce, jacobi, s_p
from .params import Params

Triple = tuple[int, int, int]


class RSymbolError(RuntimeError):
    pass


def scaling_dim(a: int, params: Params, ring: FusionRing | None = None) -> Fraction:
    """Exact scaling dimension h_a."""
    ring = ring or build_ring(params.p)
    p, r, n = params.p, params.r, params.n
    if a == ONE:
        return Fraction(0)
    if a == EPS:
        return Fraction(1)
    if ring.is_phi(a):
        i = ring.phi_index(a)
        return Fraction(r * i * (n - i), 2 * n)
    shift = 2 if a == ring.psi_plus else 6
    return Fraction(r * (p + params.kappa * s_p(p) - jacobi(n, r) + shift), 8)


def exp_i_pi(x: Fraction) -> complex:
    """(-1)^x on the principal branch, exp(i pi x)."""
    x = x % 2
    if x.denominator == 1:
        return complex(1 if x == 0 else -1)
    if x.denominator == 2:
        return 1j if x == Fraction(1, 2) else -1j
    return cmath.exp(1j * math.pi * x)


def _phi_psi_sign(i: int, p: int) -> int:
    if p % 2 == 1:
        return -1 if i % 4 in (1, 2) else 1
    return -1 if i % 4 in (2, 3) else 1


def _rotations(t: Triple) -> list[Triple]:
    a, b, c = t
    return [(a, b, c), (b, c, a), (c, a, b)]


def _close_cyclically(ring: FusionRing, seeds: dict[Triple, int], name: str) -> dict[Triple, int]:
    out: dict[Triple, int] = {}
    for t, v in seeds.items():
        for rot in _rotations(t):
            if out.setdefault(rot, v) != v:
                raise RSymbolError(f"{name}: conflicting signs at {tuple(ring.name(x) for x in rot)}")
    for t in ring.gamma:
        out.setdefault(t, 1)
    return out


def sigma_tables(params: Params, ring: FusionRing | None = None) -> tuple[dict[Triple, int], dict[Triple, int]]:
    """Sign tables sigma1 and sigma2 over all admissible triples."""
    ring = ring or build_ring(params.p)
    p, n = params.p, params.n
    P, M = ring.psi_plus, ring.psi_minus
    s1: dict[Triple, int] = {}
    s2: dict[Triple, int] = {}
    r_sign = -1 if (params.r - 1) // 2 % 2 else 1
    for i in range(1, p + 1):
        phi_i = ring.phi(i)
        for s, t in ((P, M), (M, P)):
            s1[phi_i, s, s] = s1[phi_i, s, t] = _phi_psi_sign(i, p)
            s2[phi_i, s, t] = r_sign
        for j in range(1, p + 1):
            s1[phi_i, ring.phi(j), ring.phi(g_reduce(i + j, n))] = -1 if (i * j) % 2 else 1
    for s, t in ((P, M), (M, P)):
        s2[EPS, s, t] = r_sign
    for t in list(s1) + list(s2):
        if not ring.admissible(*t):
            raise RSymbolError(f"sign seed {t} is not admissible")
    return _close_cyclically(ring, s1, "sigma1"), _close_cyclically(ring, s2, "sigma2")


def sigma_signs(a: int, b: int, c: int, params: Params, ring: FusionRing | None = None) -> tuple[int, int]:
    ring = ring or build_ring(params.p)
    if not ring.admissible(a, b, c):
        raise KeyError((a, b, c))
    s1, s2 = sigma_tables(params, ring)
    return s1[a, b, c], s2[a, b, c]


@dataclass(frozen=True, eq=False)
class RStore:
    params: Params
    ring: FusionRing
    table: Mapping[Triple, complex]
    h: Mapping[int, Fraction] = field(repr=False)

    @property
    def lam(self) -> int:
        return self.params.lam

    def __getitem__(self, t: Triple) -> complex:
        return self.table[t]


def build_rstore(params: Params, ring: FusionRing | None = None) -> RStore:
    ring = ring or build_ring(params.p)
    h = {a: scaling_dim(a, params, ring) for a in ring.labels}
    s1, s2 = sigma_tables(params, ring)
    phases: dict[Fraction, complex] = {}
    table: dict[Triple, complex] = {}
    for a, b, c in ring.gamma:
        x = (h[a] + h[b] - h[c]) * params.lam
        if x not in phases:
            phases[x] = exp_i_pi(x)
        table[a, b, c] = s1[a, b, c] * s2[a, b, c] * phases[x]
    return RStore(params, ring, MappingProxyType(table), MappingProxyType(h))


def r_symbol(store: RStore, a: int, b: int, c: int) -> complex:
    if (a, b, c) not in store.table:
        raise KeyError(f"({store.ring.name(a)}, {store.ring.name(b)}, {store.ring.name(c)}) is not admissible")
    return store.table[a, b, c]


def psi_flipped(store: RStore) -> RStore:
    """Negate every R_{ab}^c with a and b both psi labels."""
    ring = store.ring
    table = {
        t: (-v if ring.is_psi(t[0]) and ring.is_psi(t[1]) else v) for t, v in store.table.items()
    }
    return RStore(store.params, ring, MappingProxyType(table), store.h)


def permuted(store: RStore, perm: tuple[int, ...]) -> RStore:
    """The store R^nu with (R^nu)_{ab}^c = R_{nu(a) nu(b)}^{nu(c)}."""
    table = {(a, b, c): store.table[perm[a], perm[b], perm[c]] for (a, b, c) in store.table}
    return RStore(store.params, store.ring, MappingProxyType(table), store.h)
