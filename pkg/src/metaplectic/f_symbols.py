"""Closed-form F-matrices for the SO(2p+1)_2 fusion systems.

A reduced set of F-matrices is written down explicitly; the rest follow
from the rotation rule ``F_{bcd}^a = (F_{abc}^d)^T``. Every admissible
quadruple must be reached, and any quadruple reached twice must agree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .fusion_ring import EPS, ONE, FusionRing, admissible_quadruples, build_ring
from .numtheory import g_reduce
from .params import Params

Quad = tuple[int, int, int, int]
AGREEMENT_TOL = 1e-12


class FSymbolError(RuntimeError):
    """The F-store construction is inconsistent or incomplete."""


class ZeroChannelError(KeyError):
    """Requested an F-symbol whose fusion channels are not admissible."""


# ---------------------------------------------------------------------------
# building blocks


def _q_power(r: int, t: int, n: int) -> complex:
    # q^(r t) with q = exp(i pi / n); reduce the exponent mod 2n first
    return cmath.exp(1j * math.pi * ((r * t) % (2 * n)) / n)


def j_entry(i: int, j: int, p: int, r: int, kappa: int) -> complex:
    """2^zeta(i,j) kappa / sqrt(2p+1) * q^(r i j)."""
    n = 2 * p + 1
    zeta = (2 - (i == 0) - (j == 0)) / 2
    return 2**zeta * kappa / math.sqrt(n) * _q_power(r, i * j, n)


def build_H(p: int, r: int, kappa: int) -> tuple[np.ndarray, np.ndarray]:
    """The (p+1) x (p+1) matrices H and H', indexed 0..p."""
    H = np.empty((p + 1, p + 1))
    for i in range(p + 1):
        for j in range(p + 1):
            H[i, j] = (-1) ** (i * j) * j_entry(i, j, p, r, kappa).real
    signs = -np.ones((p + 1, p + 1))
    signs[0, 1:] = signs[1:, 0] = 1
    return H, signs * H


def build_G(p: int, r: int, kappa: int) -> np.ndarray:
    """The p x p matrix G, indexed 1..p."""
    G = np.empty((p, p))
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            G[i - 1, j - 1] = (-1) ** ((i - 1) * (j - 1)) * j_entry(i, j, p, r, kappa).imag
    return G


def _check_signs(s: tuple[int, ...]) -> None:
    if any(x not in (1, -1) for x in s) or math.prod(s) != -1:
        raise ValueError(f"sign quadruple {s} must be +-1 entries with product -1")


def block_A(s1: int, s2: int, s3: int, s4: int) -> np.ndarray:
    _check_signs((s1, s2, s3, s4))
    return np.array([[s1, s2], [s3, s4]], dtype=float) / math.sqrt(2)


BLOCK_B = np.array([[0.0, 1.0], [1.0, 0.0]])
_R2 = math.sqrt(2)
BLOCK_C = 0.5 * np.array([[1, -1, _R2], [-1, 1, _R2], [_R2, _R2, 0.0]])


def block_D(p: int, r: int, t: int, s1: int, s2: int, s3: int, s4: int) -> np.ndarray:
    _check_signs((s1, s2, s3, s4))
    z = _q_power(r, t, 2 * p + 1)
    return np.array([[s1 * z.real, s2 * z.imag], [s3 * z.imag, s4 * z.real]])


def block_E(p: int, r: int, t: int, s1: int, s2: int, s3: int, s4: int) -> np.ndarray:
    _check_signs((s1, s2, s3, s4))
    z = _q_power(r, t, 2 * p + 1)
    return np.array([[s1 * z.imag, s2 * z.real], [s3 * z.real, s4 * z.imag]])


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# store


@dataclass(frozen=True)
class FMatrix:
    """F_{abc}^d with rows e (a b -> e, e c -> d) and columns f (b c -> f, a f -> d)."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: np.ndarray

    def entry(self, e: int, f: int) -> float:
        return float(self.entries[self.rows.index(e), self.cols.index(f)])

    @property
    def T(self) -> FMatrix:
        return FMatrix(self.cols, self.rows, self.entries.T.copy())


def channels(ring: FusionRing, a: int, b: int, c: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Row and column labels of F_{abc}^d in canonical order."""
    N = ring.N
    rows = tuple(e for e in ring.labels if N[a, b, e] and N[e, c, d])
    cols = tuple(f for f in ring.labels if N[b, c, f] and N[a, f, d])
    return rows, cols


@dataclass(frozen=True, eq=False)
class FStore:
    params: Params
    ring: FusionRing
    table: Mapping[Quad, FMatrix]
    # flat (a, b, c, d, e, f) -> value lookup used by the verifier
    symbols: Mapping[tuple[int, ...], float] = field(repr=False)

    def __getitem__(self, quad: Quad) -> FMatrix:
        return self.table[quad]

    def __len__(self) -> int:
        return len(self.table)


def f_symbol(store: FStore, a: int, b: int, c: int, d: int, e: int, f: int) -> float:
    """The 6j-symbol F_{abc}^{d;ef}.

    Raises :class:`ZeroChannelError` when any of (a,b,e), (e,c,d), (b,c,f),
    (a,f,d) is not a fusion channel, so that "not defined" is never confused
    with a genuine zero entry.
    """
    N = store.ring.N
    if not (N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d]):
        raise ZeroChannelError((a, b, c, d, e, f))
    return store.symbols[(a, b, c, d, e, f)]


def _explicit_matrices(ring: FusionRing, params: Params) -> dict[Quad, np.ndarray]:
    """The directly listed F-matrices (before rotation closure)."""
    p, r, kappa = params.p, params.r, params.kappa
    n = 2 * p + 1
    P, M = ring.psi_plus, ring.psi_minus
    phi = ring.phi
    out: dict[Quad, np.ndarray] = {}

    def one(x: float) -> np.ndarray:
        return np.array([[float(x)]])

    # Z2 and Rep(D_{2p+1}) part
    out[EPS, EPS, EPS, EPS] = one(1)
    for i in range(1, p + 1):
        out[EPS, phi(i), EPS, phi(i)] = one(1)
        out[EPS, EPS, phi(i), phi(i)] = one(-1)
        for j in range(1, p + 1):
            for k in {g_reduce(i - j, n), g_reduce(i + j, n)} - {0}:
                if j <= i or k == g_reduce(i + j, n):
                    val = _sgn(j)
                else:
                    val = _sgn(j - 1)
                out[EPS, phi(i), phi(j), phi(k)] = one(val)

    for i in range(1, p + 1):
        for j in range(1, p + 1):
            for k in range(1, p + 1):
                for l in range(1, p + 1):
                    quad = (phi(i), phi(j), phi(k), phi(l))
                    if not ring.n_ext(quad[:3], quad[3]):
                        continue
                    if i == j == k == l:
                        out[quad] = BLOCK_C.copy()
                    elif i == k and j == l:
                        out[quad] = BLOCK_B.copy()
                    elif i == j and k == l:
                        out[quad] = block_A(1, 1, _sgn(k - i + 1), _sgn(k - i))
                    elif all(len(x) == 1 for x in channels(ring, *quad)):
                        # the remaining larger blocks are rotations of the ones above
                        out[quad] = one(1)

    # labels built only from psi
    H, Hp = build_H(p, r, kappa)
    G = build_G(p, r, kappa)
    for s, t in ((P, M), (M, P)):
        sign = 1 if s == P else -1
        out[s, s, s, s] = H
        out[s, t, s, t] = -H
        out[s, s, t, t] = Hp
        out[s, s, s, t] = sign * G

    # two psi labels, opposite positions
    for s, t in ((P, M), (M, P)):
        sign = 1 if s == P else -1
        for i in range(1, p + 1):
            for j in range(1, p + 1):
                e = _sgn(i + j)
                out[phi(i), s, phi(j), s] = -sign * _sgn(i * j) * block_D(p, r, i * j, -1, e, e, 1)
                out[phi(i), s, phi(j), t] = -_sgn(i * j) * block_E(p, r, i * j, e, 1, 1, -e)

    # two psi labels, adjacent positions
    for s, t in ((P, M), (M, P)):
        sign = 1 if s == P else -1
        for i in range(1, p + 1):
            out[phi(i), phi(i), s, s] = block_A(1, 1, 1, -1)
            out[phi(i), phi(i), s, t] = block_A(-1, -1, _sgn(i), _sgn(i + 1))
            for j in range(1, p + 1):
                if j == i:
                    continue
                if (i - j) % 2 == 0:
                    out[phi(i), phi(j), s, s] = block_A(sign, sign, 1, -1)
                else:
                    out[phi(i), phi(j), s, s] = block_A(1, -1, sign, sign)
        for i in range(1, p + 1):
            out[EPS, phi(i), s, s] = one(1)
            out[EPS, phi(i), s, t] = one(1)
            out[EPS, s, phi(i), s] = one(1)
            out[EPS, s, s, phi(i)] = one(1)
            out[EPS, s, t, phi(i)] = one(1)
            out[EPS, s, phi(i), t] = one(-1)
        out[EPS, EPS, s, s] = one(-1)
        out[EPS, s, EPS, s] = one(-1)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            if i < j:
                out[phi(i), phi(j), P, M] = block_A(_sgn(j + 1), _sgn(i + 1), _sgn(j), _sgn(i + 1))
                out[phi(i), phi(j), M, P] = block_A(_sgn(i), _sgn(j), _sgn(i), _sgn(j + 1))
            elif i > j:
                out[phi(i), phi(j), P, M] = block_A(_sgn(j), _sgn(i), _sgn(j), _sgn(i + 1))
                out[phi(i), phi(j), M, P] = block_A(_sgn(i + 1), _sgn(j + 1), _sgn(i), _sgn(j + 1))
    return out


def build_fstore(params: Params, ring: FusionRing | None = None) -> FStore:
    """Build every F-matrix for ``params``.

    Raises :class:`FSymbolError` if a listed matrix has the wrong shape, if
    two derivations of one quadruple disagree, or if some admissible
    quadruple is left undefined.
    """
    ring = ring or build_ring(params.p)
    if ring.p != params.p:
        raise ValueError("ring and params disagree on p")
    table: dict[Quad, FMatrix] = {}

    def place(quad: Quad, mat: FMatrix, origin: str) -> None:
        old = table.get(quad)
        if old is None:
            table[quad] = mat
            return
        if old.rows != mat.rows or old.cols != mat.cols:
            raise FSymbolError(f"{origin}: basis mismatch at {_quad_name(ring, quad)}")
        if np.max(np.abs(old.entries - mat.entries)) > AGREEMENT_TOL:
            raise FSymbolError(f"{origin}: conflicting values at {_quad_name(ring, quad)}")

    for quad in admissible_quadruples(ring):
        if ONE in quad:
            rows, cols = channels(ring, *quad)
            place(quad, FMatrix(rows, cols, np.ones((1, 1))), "unit")

    for quad, entries in _explicit_matrices(ring, params).items():
        rows, cols = channels(ring, *quad)
        if not rows:
            raise FSymbolError(f"listed quadruple {_quad_name(ring, quad)} is not admissible")
        if entries.shape != (len(rows), len(cols)):
            raise FSymbolError(
                f"listed F at {_quad_name(ring, quad)} has shape {entries.shape}, "
                f"expected {(len(rows), len(cols))}"
            )
        place(quad, FMatrix(rows, cols, np.array(entries, dtype=float)), "explicit")

    # rotation closure: (a,b,c,d) -> (b,c,d,a) with transpose
    for quad, mat in list(table.items()):
        cur_quad, cur = quad, mat
        for _ in range(3):
            a, b, c, d = cur_quad
            cur_quad, cur = (b, c, d, a), cur.T
            place(cur_quad, cur, "rotation")

    missing = [q for q in admissible_quadruples(ring) if q not in table]
    if missing:
        names = ", ".join(_quad_name(ring, q) for q in missing[:10])
        raise FSymbolError(f"{len(missing)} admissible quadruples left undefined, e.g. {names}")

    symbols: dict[tuple[int, ...], float] = {}
    for (a, b, c, d), mat in table.items():
        for x, e in enumerate(mat.rows):
            for y, f in enumerate(mat.cols):
                symbols[a, b, c, d, e, f] = float(mat.entries[x, y])
    return FStore(params, ring, MappingProxyType(table), MappingProxyType(symbols))


def rotate(mat: FMatrix) -> FMatrix:
    return mat.T


def _quad_name(ring: FusionRing, quad: Quad) -> str:
    return "F[" + ",".join(ring.name(x) for x in quad) + "]"
