"""Exhaustive pentagon / hexagon checks and the supporting identity suite.

Equation instances depend only on the fusion ring, so for each p the
instances are enumerated once into integer index arrays (a "plan"); a store
is then checked by gathering its values and evaluating all instances with
numpy. Work is split into contiguous chunks at instance boundaries, so the
result is bit-identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .f_symbols import FStore, FSymbolError, build_G, build_H
from .fusion_ring import FusionRing, build_ring
from .numtheory import jacobi
from .r_symbols import RStore

DEFAULT_TOL = 1e-9


@dataclass
class VerificationReport:
    name: str
    tolerance: float
    equations_checked: int = 0
    max_residual: float = 0.0
    violations: list[tuple[str, tuple, float]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            f"{self.name}+{other.name}",
            self.tolerance,
            self.equations_checked + other.equations_checked,
            max(self.max_residual, other.max_residual),
            sorted(self.violations + other.violations),
        )

    def to_dict(self, ring: FusionRing | None = None, limit: int = 20) -> dict:
        def fmt(labels):
            if ring is None or not all(isinstance(x, int) for x in labels):
                return list(labels)
            return [ring.name(x) for x in labels]

        return {
            "name": self.name,
            "passed": self.passed,
            "equations_checked": self.equations_checked,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "violation_count": len(self.violations),
            "violations": [
                {"equation": eq, "labels": fmt(labels), "residual": res}
                for eq, labels, res in self.violations[:limit]
            ],
        }


# ---------------------------------------------------------------------------
# plans


@dataclass(frozen=True, eq=False)
class _SymbolIndex:
    keys: list[tuple[int, ...]]
    pos: dict[tuple[int, ...], int]


def _f_keys(ring: FusionRing) -> _SymbolIndex:
    N = ring.N
    keys = []
    for a, b, c, d in np.argwhere(np.einsum("abe,ecd->abcd", N.astype(int), N.astype(int))):
        for e in ring.labels:
            if not (N[a, b, e] and N[e, c, d]):
                continue
            for f in ring.labels:
                if N[b, c, f] and N[a, f, d]:
                    keys.append((int(a), int(b), int(c), int(d), e, f))
    return _SymbolIndex(keys, {k: i for i, k in enumerate(keys)})


@dataclass(frozen=True, eq=False)
class PentagonPlan:
    ring: FusionRing
    findex: _SymbolIndex
    labels: np.ndarray  # (n_eq, 9): a b c d e f h i j
    lhs: np.ndarray  # (n_eq, 2)
    terms: np.ndarray  # (n_terms, 3)
    owner: np.ndarray  # (n_terms,) instance index, nondecreasing


@dataclass(frozen=True, eq=False)
class HexagonPlan:
    ring: FusionRing
    findex: _SymbolIndex
    rindex: dict[tuple[int, int, int], int]
    labels: np.ndarray  # (n_eq, 6): a b c d g f
    lhs_f: np.ndarray
    lhs_r: np.ndarray  # (n_eq, 2)
    terms_f: np.ndarray  # (n_terms, 2)
    terms_r: np.ndarray
    owner: np.ndarray


@lru_cache(maxsize=8)
def pentagon_plan(p: int) -> PentagonPlan:
    ring = build_ring(p)
    N = ring.N
    fi = _f_keys(ring)
    pos = fi.pos
    fuse = [[ring.fuse(a, b) for b in ring.labels] for a in ring.labels]
    labels, lhs, terms, owner = [], [], [], []
    L = ring.labels
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    for f in fuse[a][b]:
                        for j in fuse[c][d]:
                            for e in fuse[f][j]:
                                for h in fuse[f][c]:
                                    if not N[h, d, e]:
                                        continue
                                    for i in fuse[b][j]:
                                        if not N[a, i, e]:
                                            continue
                                        k = len(labels)
                                        labels.append((a, b, c, d, e, f, h, i, j))
                                        lhs.append((pos[f, c, d, e, h, j], pos[a, b, j, e, f, i]))
                                        for g in fuse[b][c]:
                                            if N[a, g, h] and N[g, d, i]:
                                                terms.append(
                                                    (pos[a, b, c, h, f, g], pos[a, g, d, e, h, i], pos[b, c, d, i, g, j])
                                                )
                                                owner.append(k)
    return PentagonPlan(
        ring,
        fi,
        np.array(labels, dtype=np.int32).reshape(-1, 9),
        np.array(lhs, dtype=np.int64).reshape(-1, 2),
        np.array(terms, dtype=np.int64).reshape(-1, 3),
        np.array(owner, dtype=np.int64),
    )


@lru_cache(maxsize=8)
def hexagon_plan(p: int) -> HexagonPlan:
    ring = build_ring(p)
    N = ring.N
    fi = _f_keys(ring)
    pos = fi.pos
    rindex = {t: i for i, t in enumerate(ring.gamma)}
    fuse = [[ring.fuse(a, b) for b in ring.labels] for a in ring.labels]
    labels, lhs_f, lhs_r, terms_f, terms_r, owner = [], [], [], [], [], []
    L = ring.labels
    for a in L:
        for b in L:
            for c in L:
                for d in L:
                    for g in fuse[a][c]:
                        if not N[g, b, d]:
                            continue
                        for f in fuse[c][b]:
                            if not N[a, f, d]:
                                continue
                            k = len(labels)
                            labels.append((a, b, c, d, g, f))
                            lhs_f.append(pos[a, c, b, d, g, f])
                            lhs_r.append((rindex[a, c, g], rindex[b, c, f]))
                            for e in fuse[a][b]:
                                if N[c, e, d]:
                                    terms_f.append((pos[c, a, b, d, g, e], pos[a, b, c, d, e, f]))
                                    terms_r.append(rindex[e, c, d])
                                    owner.append(k)
    return HexagonPlan(
        ring,
        fi,
        rindex,
        np.array(labels, dtype=np.int32).reshape(-1, 6),
        np.array(lhs_f, dtype=np.int64),
        np.array(lhs_r, dtype=np.int64).reshape(-1, 2),
        np.array(terms_f, dtype=np.int64).reshape(-1, 2),
        np.array(terms_r, dtype=np.int64),
        np.array(owner, dtype=np.int64),
    )


def _f_vector(store: FStore, index: _SymbolIndex) -> np.ndarray:
    try:
        return np.array([store.symbols[k] for k in index.keys], dtype=float)
    except KeyError as exc:
        raise FSymbolError(f"F-store has no value for admissible symbol {exc.args[0]}") from None


def _r_vector(store: RStore, rindex: dict) -> np.ndarray:
    try:
        return np.array([store.table[t] for t in rindex], dtype=complex)
    except KeyError as exc:
        raise FSymbolError(f"R-store has no value for admissible triple {exc.args[0]}") from None


def _chunks(n_eq: int, owner: np.ndarray, jobs: int) -> list[tuple[int, int, int, int]]:
    """Split [0, n_eq) into contiguous ranges plus the matching term ranges."""
    jobs = max(1, min(jobs, n_eq or 1))
    bounds = [round(k * n_eq / jobs) for k in range(jobs + 1)]
    tb = np.searchsorted(owner, bounds)
    return [(bounds[k], bounds[k + 1], int(tb[k]), int(tb[k + 1])) for k in range(jobs)]


def _run_chunks(fn, n_eq: int, owner: np.ndarray, jobs: int) -> np.ndarray:
    parts = _chunks(n_eq, owner, jobs)
    if jobs <= 1:
        res = [fn(*c) for c in parts]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            res = list(pool.map(lambda c: fn(*c), parts))
    return np.concatenate(res) if res else np.zeros(0)


def _sum_by_owner(values: np.ndarray, owner: np.ndarray, start: int, size: int) -> np.ndarray:
    # bincount adds sequentially in term order: deterministic for a fixed chunk
    if np.iscomplexobj(values):
        re = np.bincount(owner - start, weights=values.real, minlength=size)
        im = np.bincount(owner - start, weights=values.imag, minlength=size)
        return re + 1j * im
    return np.bincount(owner - start, weights=values, minlength=size)


def _report(name: str, eq_id: str, labels: np.ndarray, residuals: np.ndarray, tol: float) -> VerificationReport:
    bad = np.flatnonzero(residuals > tol)
    violations = sorted((eq_id, tuple(int(x) for x in labels[k]), float(residuals[k])) for k in bad)
    return VerificationReport(
        name, tol, int(residuals.size), float(residuals.max()) if residuals.size else 0.0, violations
    )


def check_pentagon(fstore: FStore, tolerance: float = DEFAULT_TOL, jobs: int = 1) -> VerificationReport:
    """Check every pentagon instance

    F_{fcd}^{e;hj} F_{abj}^{e;fi} = sum_g F_{abc}^{h;fg} F_{agd}^{e;hi} F_{bcd}^{i;gj}

    with the sum over the b (x) c channel g.
    """
    plan = pentagon_plan(fstore.params.p)
    F = _f_vector(fstore, plan.findex)
    n_eq = len(plan.labels)

    def work(lo, hi, tlo, thi):
        lhs = F[plan.lhs[lo:hi, 0]] * F[plan.lhs[lo:hi, 1]]
        t = plan.terms[tlo:thi]
        prod = F[t[:, 0]] * F[t[:, 1]] * F[t[:, 2]]
        rhs = _sum_by_owner(prod, plan.owner[tlo:thi], lo, hi - lo)
        return np.abs(lhs - rhs)

    residuals = _run_chunks(work, n_eq, plan.owner, jobs)
    return _report("pentagon", "pentagon", plan.labels, residuals, tolerance)


def check_hexagon(
    fstore: FStore, rstore: RStore, tolerance: float = DEFAULT_TOL, jobs: int = 1
) -> VerificationReport:
    """Both hexagon families, with R and with R^-1."""
    if fstore.params.p != rstore.params.p:
        raise ValueError("F- and R-stores have different p")
    plan = hexagon_plan(fstore.params.p)
    F = _f_vector(fstore, plan.findex)
    R = _r_vector(rstore, plan.rindex)
    n_eq = len(plan.labels)
    reports = []
    for eq_id, Rv in (("hexagon", R), ("hexagon-inverse", 1 / R)):

        def work(lo, hi, tlo, thi, Rv=Rv):
            lhs = Rv[plan.lhs_r[lo:hi, 0]] * F[plan.lhs_f[lo:hi]] * Rv[plan.lhs_r[lo:hi, 1]]
            tf = plan.terms_f[tlo:thi]
            prod = F[tf[:, 0]] * Rv[plan.terms_r[tlo:thi]] * F[tf[:, 1]]
            rhs = _sum_by_owner(prod, plan.owner[tlo:thi], lo, hi - lo)
            return np.abs(lhs - rhs)

        residuals = _run_chunks(work, n_eq, plan.owner, jobs)
        reports.append(_report(eq_id, eq_id, plan.labels, residuals, tolerance))
    out = reports[0].merge(reports[1])
    out.name = "hexagon"
    return out


def check_orthogonality(fstore: FStore, tolerance: float = 1e-10) -> VerificationReport:
    residuals, labels = [], []
    for quad in sorted(fstore.table):
        m = fstore.table[quad].entries
        residuals.append(float(np.max(np.abs(m.T @ m - np.eye(m.shape[1])))))
        labels.append(quad)
    return _report("orthogonality", "FtF=I", np.array(labels).reshape(-1, 4), np.array(residuals), tolerance)


def matrix_orthogonality_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.T @ m - np.eye(m.shape[1]))))


def jacobi_det_product(p: int, r: int) -> float:
    """det H(2r + 2p + 1) * det G(2r + 2p + 1) at kappa = 1."""
    arg = 2 * r + 2 * p + 1
    H, _ = build_H(p, arg, 1)
    return float(np.linalg.det(H) * np.linalg.det(build_G(p, arg, 1)))


def check_jacobi_det(p: int, r: int, tolerance: float = 1e-8) -> bool:
    return abs(jacobi_det_product(p, r) - jacobi(r, 2 * p + 1)) <= tolerance


# ---------------------------------------------------------------------------
# closed-form Gauss-sum identities behind the all-psi hexagon equations


def _rhs_phase(j: int, p: int, r: int) -> complex:
    n = 2 * p + 1
    # exp(i pi j/2 (j - (-1)^p + r - j r / n))
    x = j * (j - (-1) ** p + r) * n - j * j * r
    return np.exp(1j * math.pi * (x % (4 * n)) / (2 * n))


def _lhs_phase(p: int, r: int, kappa: int, idx: tuple[int, ...]) -> complex:
    n = 2 * p + 1
    total = r * (2 - kappa * (1j ** (p * (1 + p))).real + p - jacobi(n, r))
    acc = complex(total)
    for i in idx:
        acc += i * (i - (-1) ** p) - r * i + r * i * i / n
    return np.exp(1j * math.pi / 2 * acc)


def appendix_identity(cls: int, p: int, r: int, kappa: int, i1: int = 0, i2: int = 0) -> tuple[complex, complex]:
    """(LHS, RHS) of one of the four explicit identity classes.

    Class 1 uses no indices, class 2 only ``i1``; classes 3 and 4 use both.
    """
    n = 2 * p + 1
    sq = math.sqrt(n)
    k2 = kappa * kappa
    js = range(1, p + 1)
    if cls == 1:
        lhs = kappa / sq * _lhs_phase(p, r, kappa, ())
        rhs = k2 / n + 2 * k2 / n * sum(_rhs_phase(j, p, r) for j in js)
    elif cls == 2:
        lhs = math.sqrt(2) * kappa / sq * _lhs_phase(p, r, kappa, (i1,))
        rhs = math.sqrt(2) * k2 / n + 2 * math.sqrt(2) * k2 / n * sum(
            (-1) ** (j * i1) * math.cos(r * i1 * j * math.pi / n) * _rhs_phase(j, p, r) for j in js
        )
    elif cls == 3:
        lhs = (
            2 * kappa * (-1) ** (i1 * i2) * math.cos(r * i1 * i2 * math.pi / n) / sq
            * _lhs_phase(p, r, kappa, (i1, i2))
        )
        rhs = 2 * k2 / n + 4 * k2 / n * sum(
            (-1) ** (j * (i1 + i2))
            * math.cos(r * i1 * j * math.pi / n)
            * math.cos(r * i2 * j * math.pi / n)
            * _rhs_phase(j, p, r)
            for j in js
        )
    elif cls == 4:
        lhs = (
            2 * kappa * (-1) ** ((i1 - 1) * (i2 - 1)) * math.sin(r * i1 * i2 * math.pi / n) / sq
            * _lhs_phase(p, r, kappa, (i1, i2))
        )
        rhs = -4j * k2 * (-1) ** (-i1 - i2) / n * sum(
            (-1) ** (j * (i1 + i2 - 2))
            * math.sin(r * i1 * j * math.pi / n)
            * math.sin(r * i2 * j * math.pi / n)
            * _rhs_phase(j, p, r)
            for j in js
        )
    else:
        raise ValueError(f"identity class must be 1..4, got {cls}")
    return complex(lhs), complex(rhs)


def check_appendix_identities(
    p: int, r: int, kappa: int, i1: int | None = None, i2: int | None = None, tolerance: float = DEFAULT_TOL
) -> VerificationReport:
    """Evaluate all four identity classes.

    With ``i1``/``i2`` given, only that index pair is used; otherwise every
    pair in 1..p is checked.
    """
    cases: list[tuple[int, tuple[int, int]]] = [(1, (0, 0))]
    pairs = [(i1, i2)] if i1 is not None and i2 is not None else [
        (x, y) for x in range(1, p + 1) for y in range(1, p + 1)
    ]
    firsts = sorted({x for x, _ in pairs})
    cases += [(2, (x, 0)) for x in firsts]
    cases += [(3, pr) for pr in pairs] + [(4, pr) for pr in pairs]
    residuals, labels = [], []
    for cls, (x, y) in cases:
        lhs, rhs = appendix_identity(cls, p, r, kappa, x, y)
        residuals.append(abs(lhs - rhs))
        labels.append((cls, x, y))
    report = _report("identities", "gauss-identity", np.array(labels).reshape(-1, 3), np.array(residuals), tolerance)
    report.violations = [(f"gauss-identity-{lab[0]}", lab, res) for _, lab, res in report.violations]
    return report
