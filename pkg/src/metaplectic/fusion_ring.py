"""Grothendieck ring of SO(2p+1)_2.

Labels are plain integers in canonical order::

    0 = 1, 1 = eps, 1 + i = phi_i (i = 1..p), p + 2 = psi+, p + 3 = psi-

Every object is self-dual and the ring is multiplicity free, so the fusion
data is a dense boolean tensor ``N[a, b, c]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .numtheory import g_reduce, half_unit_group

ONE = 0
EPS = 1


@dataclass(frozen=True)
class RingAutomorphism:
    perm: tuple[int, ...]
    z: int
    swap_psi: bool

    def __call__(self, a: int) -> int:
        return self.perm[a]


@dataclass(frozen=True, eq=False)
class FusionRing:
    p: int
    N: np.ndarray = field(repr=False)
    fp_dims: tuple[float, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return 2 * self.p + 1

    @property
    def size(self) -> int:
        return self.p + 4

    @property
    def labels(self) -> range:
        return range(self.size)

    @property
    def psi_plus(self) -> int:
        return self.p + 2

    @property
    def psi_minus(self) -> int:
        return self.p + 3

    def phi(self, i: int) -> int:
        if not 1 <= i <= self.p:
            raise ValueError(f"phi index {i} outside 1..{self.p}")
        return 1 + i

    def is_phi(self, a: int) -> bool:
        return 2 <= a <= self.p + 1

    def is_psi(self, a: int) -> bool:
        return a >= self.p + 2

    def phi_index(self, a: int) -> int:
        return a - 1

    def dual(self, a: int) -> int:
        return a

    def name(self, a: int) -> str:
        if a == ONE:
            return "1"
        if a == EPS:
            return "eps"
        if a == self.psi_plus:
            return "psi+"
        if a == self.psi_minus:
            return "psi-"
        return f"phi{a - 1}"

    def parse(self, name: str) -> int:
        name = name.strip()
        fixed = {"1": ONE, "eps": EPS, "psi+": self.psi_plus, "psi-": self.psi_minus}
        if name in fixed:
            return fixed[name]
        if name.startswith("phi") and name[3:].isdigit():
            return self.phi(int(name[3:]))
        raise ValueError(f"unknown label {name!r}")

    def admissible(self, a: int, b: int, c: int) -> bool:
        return bool(self.N[a, b, c])

    def fuse(self, a: int, b: int) -> list[int]:
        """Channels of a (x) b in canonical order."""
        return [int(c) for c in np.flatnonzero(self.N[a, b])]

    @property
    def gamma(self) -> list[tuple[int, int, int]]:
        return [tuple(int(x) for x in t) for t in np.argwhere(self.N)]

    def n_ext(self, chain: list[int] | tuple[int, ...], total: int) -> int:
        """Extended structure constant N_{x1 ... xn}^total."""
        if len(chain) < 2:
            raise ValueError("chain needs at least two labels")
        vec = np.zeros(self.size, dtype=np.int64)
        vec[chain[0]] = 1
        for x in chain[1:]:
            vec = vec @ self.N[:, x, :].astype(np.int64)
        return int(vec[total])

    def automorphisms(self) -> list[RingAutomorphism]:
        """All based-ring automorphisms: half-unit group times the psi swap."""
        autos = []
        for z in half_unit_group(self.n):
            for swap in (False, True):
                perm = [ONE, EPS]
                perm += [self.phi(g_reduce(z * i, self.n)) for i in range(1, self.p + 1)]
                perm += [self.psi_minus, self.psi_plus] if swap else [self.psi_plus, self.psi_minus]
                autos.append(RingAutomorphism(tuple(perm), z, swap))
        return autos

    def preserves(self, perm: tuple[int, ...]) -> bool:
        idx = np.array(perm)
        return bool(np.array_equal(self.N[np.ix_(idx, idx, idx)], self.N))


def build_ring(p: int) -> FusionRing:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    n = 2 * p + 1
    size = p + 4
    N = np.zeros((size, size, size), dtype=bool)
    psi = (p + 2, p + 3)

    def phi(i: int) -> int:
        return 1 + g_reduce(i, n)

    phis = [1 + i for i in range(1, p + 1)]

    def put(a: int, b: int, channels) -> None:
        for c in channels:
            N[a, b, c] = N[b, a, c] = True

    for a in range(size):
        put(ONE, a, [a])
    put(EPS, EPS, [ONE])
    for i in range(1, p + 1):
        put(EPS, phi(i), [phi(i)])
        put(phi(i), phi(i), [ONE, EPS, phi(2 * i)])
        for j in range(i + 1, p + 1):
            put(phi(i), phi(j), [phi(i - j), phi(i + j)])
        for s in psi:
            put(phi(i), s, psi)
    put(EPS, psi[0], [psi[1]])
    put(EPS, psi[1], [psi[0]])
    for s in psi:
        put(s, s, [ONE, *phis])
    put(psi[0], psi[1], [EPS, *phis])

    fp = (1.0, 1.0) + (2.0,) * p + (math.sqrt(n),) * 2
    return FusionRing(p, N, fp)


def check_ring_axioms(ring: FusionRing) -> list[str]:
    """Return a list of violated ring axioms (empty when all hold)."""
    problems = []
    N = ring.N.astype(np.int64)
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        problems.append("not commutative")
    for a in ring.labels:
        if not (N[a, ONE] == np.eye(ring.size, dtype=np.int64)[a]).all():
            problems.append(f"unit fails for {ring.name(a)}")
        row = N[a, :, ONE]
        if row.sum() != 1 or row[ring.dual(a)] != 1:
            problems.append(f"duality fails for {ring.name(a)}")
    # (a b) c = a (b c)
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("afd,bcf->abcd", N, N)
    if not np.array_equal(left, right):
        problems.append("not associative")
    return problems


def ring_labels_names(ring: FusionRing) -> list[str]:
    return [ring.name(a) for a in ring.labels]


def admissible_quadruples(ring: FusionRing) -> list[tuple[int, int, int, int]]:
    """All (a, b, c, d) with N_{abc}^d >= 1, in lexicographic order."""
    N = ring.N.astype(np.int64)
    counts = np.einsum("abe,ecd->abcd", N, N)
    return [tuple(int(x) for x in t) for t in np.argwhere(counts)]
