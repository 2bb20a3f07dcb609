"""Pivotal structures, quantum dimensions, S and T.

Two routes are kept side by side: :func:`compute_modular` assembles the data
from the F- and R-stores, :func:`closed_form_modular` evaluates the known
closed forms. They are compared in the test-suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .f_symbols import FStore, f_symbol
from .fusion_ring import EPS, ONE, FusionRing, build_ring
from .numtheory import jacobi
from .params import Params
from .r_symbols import RStore

DEFAULT_TOL = 1e-9


class ModularDataError(RuntimeError):
    pass


@dataclass(frozen=True)
class PivotalSolution:
    eps: tuple[int, ...]

    def __getitem__(self, a: int) -> int:
        return self.eps[a]

    @property
    def psi_sign(self) -> int:
        return self.eps[-1]


@dataclass(frozen=True, eq=False)
class ModularData:
    pivotal: PivotalSolution
    qdims: np.ndarray
    s_hat: np.ndarray
    s: np.ndarray
    t: np.ndarray

    @property
    def total_dim(self) -> float:
        return float(np.sum(self.qdims**2))


def _pivotal_rhs(fstore: FStore, a: int, b: int, c: int) -> float:
    # all labels are self-dual
    return (
        f_symbol(fstore, a, b, c, ONE, c, a)
        * f_symbol(fstore, b, c, a, ONE, a, b)
        * f_symbol(fstore, c, a, b, ONE, b, c)
    )


def _pivotal_equations(fstore: FStore, tol: float) -> list[tuple[tuple[int, int, int], int]]:
    eqs = []
    for a, b, c in fstore.ring.gamma:
        rhs = _pivotal_rhs(fstore, a, b, c)
        if abs(abs(rhs) - 1) > tol or abs(rhs - round(rhs)) > tol:
            raise ModularDataError(f"pivotal equation at {(a, b, c)} has no sign solution (rhs={rhs})")
        eqs.append(((a, b, c), int(round(rhs))))
    return eqs


def solve_pivotal(fstore: FStore, tol: float = DEFAULT_TOL) -> list[PivotalSolution]:
    """All sign vectors eps with eps_c^-1 eps_a eps_b equal to the F-product.

    Solved as a linear system over GF(2) (eps = (-1)^x); the family should
    have exactly two solutions, differing in the common sign of psi+-.
    """
    size = fstore.ring.size
    rows = []
    for (a, b, c), rhs in _pivotal_equations(fstore, tol):
        row = np.zeros(size + 1, dtype=np.uint8)
        for x in (a, b, c):
            row[x] ^= 1
        row[size] = 0 if rhs == 1 else 1
        rows.append(row)
    sols = _gf2_solutions(np.array(rows, dtype=np.uint8), size)
    out = [PivotalSolution(tuple(1 - 2 * int(v) for v in x)) for x in sols]
    out.sort(key=lambda s: -s.psi_sign)
    if len(out) != 2:
        raise ModularDataError(f"expected exactly 2 pivotal structures, found {len(out)}")
    return out


def solve_pivotal_brute_force(fstore: FStore, tol: float = DEFAULT_TOL) -> list[PivotalSolution]:
    """Exhaustive search over all 2^(p+4) sign vectors (small p only)."""
    eqs = _pivotal_equations(fstore, tol)
    found = []
    for signs in product((1, -1), repeat=fstore.ring.size):
        if all(signs[a] * signs[b] * signs[c] == rhs for (a, b, c), rhs in eqs):
            found.append(PivotalSolution(signs))
    found.sort(key=lambda s: -s.psi_sign)
    return found


def _gf2_solutions(aug: np.ndarray, nvars: int) -> list[np.ndarray]:
    A = aug.copy()
    pivots = []
    row = 0
    for col in range(nvars):
        hits = np.nonzero(A[row:, col])[0]
        if hits.size == 0:
            continue
        k = row + hits[0]
        A[[row, k]] = A[[k, row]]
        for other in range(A.shape[0]):
            if other != row and A[other, col]:
                A[other] ^= A[row]
        pivots.append(col)
        row += 1
        if row == A.shape[0]:
            break
    if np.any(A[row:, nvars]):
        return []
    free = [c for c in range(nvars) if c not in pivots]
    sols = []
    for values in product((0, 1), repeat=len(free)):
        x = np.zeros(nvars, dtype=np.uint8)
        x[free] = values
        for r, col in enumerate(pivots):
            x[col] = (A[r, nvars] + A[r, :nvars] @ x - x[col]) % 2
        sols.append(x)
    return sols


def quantum_dims(fstore: FStore, pivotal: PivotalSolution, tol: float = DEFAULT_TOL) -> np.ndarray:
    """q_a from the left and right traces; raises if they disagree."""
    q = np.empty(fstore.ring.size)
    for a in fstore.ring.labels:
        x = f_symbol(fstore, a, a, a, a, ONE, ONE)
        left = pivotal[a] / x
        right = 1 / (pivotal[a] * x)
        if abs(left - right) > tol:
            raise ModularDataError(f"non-spherical: q_l != q_r for label {fstore.ring.name(a)}")
        q[a] = left
    return q


def s_hat_matrix(fstore: FStore, rstore: RStore) -> np.ndarray:
    """Unnormalized S-hat from F and the double braiding.

    The second F factor is taken from the inverse matrix, which is the
    only reading that keeps the 1-index in an admissible channel.
    """
    ring = fstore.ring
    size = ring.size
    S = np.zeros((size, size), dtype=complex)
    for a in ring.labels:
        for b in ring.labels:
            mat = fstore[a, b, b, a]
            inv = np.linalg.inv(mat.entries)
            col1 = mat.cols.index(ONE)
            total = 0j
            for x, c in enumerate(mat.rows):
                total += mat.entries[x, col1] * rstore[a, b, c] * rstore[b, a, c] * inv[col1, x]
            S[a, b] = total
    return S


def twists(ring: FusionRing, rstore: RStore, qdims: np.ndarray) -> np.ndarray:
    t = np.empty(ring.size, dtype=complex)
    for a in ring.labels:
        t[a] = sum(qdims[c] * rstore[a, a, c] for c in ring.fuse(a, a)) / qdims[a]
    return t


def compute_modular(
    fstore: FStore, rstore: RStore, pivotal: PivotalSolution | None = None, tol: float = DEFAULT_TOL
) -> ModularData:
    if fstore.params.p != rstore.params.p or fstore.params.r != rstore.params.r or fstore.params.kappa != rstore.params.kappa:
        raise ValueError("F- and R-stores were built from different parameters")
    if pivotal is None:
        pivotal = positive_pivotal(fstore)
    q = quantum_dims(fstore, pivotal, tol)
    s_hat = s_hat_matrix(fstore, rstore)
    D = np.diag(q)
    s = D @ s_hat @ D
    if abs(np.linalg.det(s)) < tol:
        raise ModularDataError("S-matrix is degenerate")
    return ModularData(pivotal, q, s_hat, s, twists(fstore.ring, rstore, q))


def positive_pivotal(fstore: FStore) -> PivotalSolution:
    """The pivotal structure with eps_psi = kappa (all quantum dimensions positive)."""
    for sol in solve_pivotal(fstore):
        if sol.psi_sign == fstore.params.kappa:
            return sol
    raise ModularDataError("no pivotal structure with eps_psi = kappa")


def pivotal_from_sign(ring: FusionRing, psi_sign: int) -> PivotalSolution:
    return PivotalSolution((1,) * (ring.size - 2) + (psi_sign, psi_sign))


def closed_form_modular(params: Params, psi_sign: int | None = None) -> ModularData:
    """Closed-form q, S and T for (p, r, kappa, lambda).

    ``psi_sign`` is the pivotal coefficient of psi+-; it defaults to kappa,
    which gives positive quantum dimensions. Flipping it negates q_psi,
    theta_psi and every S entry with exactly one psi index.
    """
    ring = build_ring(params.p)
    p, r, kappa, lam, n = params.p, params.r, params.kappa, params.lam, params.n
    if psi_sign is None:
        psi_sign = kappa
    flip = psi_sign * kappa
    size = ring.size
    P, M = ring.psi_plus, ring.psi_minus
    qpsi = math.sqrt(n)
    q = np.array([1.0, 1.0] + [2.0] * p + [qpsi, qpsi])
    two = jacobi(2, n)

    S = np.zeros((size, size))
    S[ONE, ONE] = S[EPS, EPS] = S[ONE, EPS] = 1
    for i in range(1, p + 1):
        a = ring.phi(i)
        S[ONE, a] = S[EPS, a] = 2
        for j in range(1, p + 1):
            S[a, ring.phi(j)] = 4 * math.cos(2 * math.pi * ((i * j * r) % n) / n)
    for s in (P, M):
        S[ONE, s] = q[s]
        S[EPS, s] = -q[s]
        S[s, s] = -kappa * two * q[s]
    S[P, M] = kappa * two * q[M]
    S[M, P] = kappa * two * q[P]
    S = np.triu(S) + np.triu(S, 1).T

    t = np.ones(size, dtype=complex)
    for i in range(1, p + 1):
        t[ring.phi(i)] = (-1) ** i * cmath.exp(1j * math.pi * ((lam * r * i * i) % (2 * n)) / n)
    base = cmath.exp(1j * math.pi * kappa * lam * r / 2) * cmath.exp(
        1j * math.pi * lam * r / 4 * (jacobi(n, r) + kappa * two - p)
    )
    t[P], t[M] = -base, base

    sign = np.ones(size)
    sign[[P, M]] = flip
    q = q * sign
    S = S * np.outer(sign, sign)
    t = t * sign
    D = np.diag(q)
    s_hat = np.linalg.inv(D) @ S @ np.linalg.inv(D)
    return ModularData(pivotal_from_sign(ring, psi_sign), q, s_hat.astype(complex), S.astype(complex), t)


def twist_exponents(t: np.ndarray, denominator: int) -> list[Fraction]:
    """theta = exp(i pi x) with x in [0, 2), rounded to the given denominator."""
    out = []
    for z in t:
        x = cmath.phase(z) / math.pi % 2
        out.append(Fraction(round(x * denominator), denominator) % 2)
    return out
