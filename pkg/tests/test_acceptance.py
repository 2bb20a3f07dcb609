"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import cmath
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from metaplectic import Params, build_fstore, build_rstore, closed_form_modular, compute_modular
from metaplectic.classifier import enumerate_classes, invariant_profile
from metaplectic.cli import main
from metaplectic.modular import pivotal_from_sign
from metaplectic.mutation import mutate_f
from metaplectic.numtheory import count_classes, eisenstein_jacobi, gauss_sum_closed_form, jacobi, quadratic_gauss_sum
from metaplectic.params import all_params, valid_r
from metaplectic.verifier import (
    check_appendix_identities,
    check_hexagon,
    check_jacobi_det,
    check_orthogonality,
    check_pentagon,
    jacobi_det_product,
    pentagon_plan,
)

from conftest import params_upto, record

TOL = 1e-9


def test_criterion_01_pentagon():
    worst, bad, n = 0.0, 0, 0
    for P in params_upto(6):
        rep = check_pentagon(build_fstore(P), TOL)
        worst, bad, n = max(worst, rep.max_residual), bad + len(rep.violations), n + 1
    pentagon_plan.cache_clear()
    store = build_fstore(Params(6, 1, 1))
    t0 = time.perf_counter()
    check_pentagon(store, TOL, jobs=1)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and worst < TOL and elapsed < 60
    record(1, ok, f"pentagon, {n} (p<=6, r, kappa) stores, {bad} violations, max residual {worst:.1e}, "
                  f"p=6 single-threaded {elapsed:.1f}s")
    assert ok


def test_criterion_02_hexagon():
    worst, bad, n = 0.0, 0, 0
    for P in params_upto(6, with_lambda=True):
        rep = check_hexagon(build_fstore(P), build_rstore(P), TOL)
        worst, bad, n = max(worst, rep.max_residual), bad + len(rep.violations), n + 1
    ok = bad == 0 and worst < TOL
    record(2, ok, f"hexagon R1+R2, {n} (p<=6, r, kappa, lambda) stores, {bad} violations, max residual {worst:.1e}")
    assert ok


def test_criterion_03_orthogonality():
    worst = max(check_orthogonality(build_fstore(P), 1e-10).max_residual for P in params_upto(6))
    ok = worst <= 1e-10
    record(3, ok, f"every F-matrix orthogonal for p<=6, max |M^T M - I| {worst:.1e}")
    assert ok


def test_criterion_04_modular_closed_forms():
    dq = dt = ds = ds_off = 0.0
    psi_block_negated = True
    cases = 0
    for P in params_upto(6, with_lambda=True):
        f = build_fstore(P)
        r = build_rstore(P, f.ring)
        ring = f.ring
        block = np.ix_([ring.psi_plus, ring.psi_minus], [ring.psi_plus, ring.psi_minus])
        for pivot in (1, -1):
            md = compute_modular(f, r, pivotal_from_sign(ring, pivot))
            closed = closed_form_modular(P, pivot)
            dq = max(dq, np.max(np.abs(md.qdims - closed.qdims)))
            dt = max(dt, np.max(np.abs(md.t - closed.t)))
            ds = max(ds, np.max(np.abs(md.s - closed.s)))
            off = np.abs(md.s - closed.s)
            off[block] = 0
            ds_off = max(ds_off, off.max())
            psi_block_negated &= bool(np.allclose(md.s[block], -closed.s[block], atol=TOL))
            cases += 1
    ok = max(dq, dt, ds) < TOL
    detail = f"{cases} cases: q dev {dq:.1e}, T dev {dt:.1e}, S dev {ds:.1e}"
    if not ok:
        detail += (f" (S off the psi-psi block {ds_off:.1e}; psi-psi block exactly negated in all cases: "
                   f"{psi_block_negated}; computed S satisfies the balancing identity, see test_modular)")
    record(4, ok, detail)
    assert ok, detail


def _m(x, s=1):
    return s * cmath.exp(1j * math.pi * Fraction(x))


T_LISTS = {
    (1, 1, 1, 1): [1, 1, _m("1/3", -1), _m("1/4", -1), _m("1/4")],
    (1, 1, 1, -1): [1, 1, _m("2/3"), _m("3/4"), _m("3/4", -1)],
    (1, 1, -1, 1): [1, 1, _m("1/3", -1), _m("3/4"), _m("3/4", -1)],
    (1, 1, -1, -1): [1, 1, _m("2/3"), _m("1/4", -1), _m("1/4")],
    (2, 1, 1, 1): [1, 1, _m("1/5", -1), _m("4/5"), -1, 1],
    (2, 1, -1, 1): [1, 1, _m("1/5", -1), _m("4/5"), 1j, -1j],
    (2, 3, 1, 1): [1, 1, _m("3/5", -1), _m("2/5"), -1j, 1j],
    (2, 3, -1, 1): [1, 1, _m("3/5", -1), _m("2/5"), 1, -1],
    (3, 1, 1, 1): [1, 1, _m("1/7", -1), _m("4/7"), _m("2/7"), _m("1/4", -1), _m("1/4")],
    (3, 1, 1, -1): [1, 1, _m("6/7"), _m("3/7", -1), _m("5/7", -1), _m("3/4"), _m("3/4", -1)],
    (3, 1, -1, 1): [1, 1, _m("1/7", -1), _m("4/7"), _m("2/7"), _m("3/4", -1), _m("3/4")],
    (3, 1, -1, -1): [1, 1, _m("6/7"), _m("3/7", -1), _m("5/7", -1), _m("1/4"), _m("1/4", -1)],
    (4, 1, 1, 1): [1, 1, _m("1/9", -1), _m("4/9"), 1, _m("7/9", -1), -1, 1],
    (4, 1, 1, -1): [1, 1, _m("8/9"), _m("5/9", -1), 1, _m("2/9"), -1, 1],
    (4, 1, -1, 1): [1, 1, _m("1/9", -1), _m("4/9"), 1, _m("7/9", -1), -1j, 1j],
    (4, 1, -1, -1): [1, 1, _m("8/9"), _m("5/9", -1), 1, _m("2/9"), 1j, -1j],
}


def test_criterion_05_t_matrices():
    worst = 0.0
    for key, want in T_LISTS.items():
        P = Params(*key)
        f = build_fstore(P)
        md = compute_modular(f, build_rstore(P, f.ring))
        worst = max(worst, float(np.max(np.abs(md.t - np.array(want)))))
    ok = worst < TOL
    record(5, ok, f"{len(T_LISTS)} printed T-diagonals for p=1..4 reproduced, max deviation {worst:.1e}")
    assert ok


def test_criterion_06_x_tuples():
    r5 = math.sqrt(5)
    c, s = math.cos, math.sin
    pi = math.pi
    ordered = {
        (2, 1): [1, (-1 - r5) / 4, (-1 - r5) / 4],
        (2, 3): [1, -(1 - r5) / 4, -(1 - r5) / 4],
        (3, 1): [1, -c(pi / 7), -s(pi / 14), s(3 * pi / 14)],
        (3, 3): [1, -s(pi / 14), s(3 * pi / 14), -c(pi / 7)],
        (3, 5): [1, s(3 * pi / 14), -c(pi / 7), -s(pi / 14)],
    }
    worst = 0.0
    for (p, r), want in ordered.items():
        got = invariant_profile(Params(p, r)).x_tuple
        worst = max(worst, max(abs(a - b) for a, b in zip(got, want)))
    # p=4 is listed without the i=0 entry and in a different order: compare as multisets
    multisets = {
        1: [-c(pi / 9), c(4 * pi / 9), 1, c(2 * pi / 9)],
        5: [c(4 * pi / 9), c(2 * pi / 9), 1, -c(pi / 9)],
    }
    for r, want in multisets.items():
        got = sorted(invariant_profile(Params(4, r)).x_tuple[1:])
        worst = max(worst, max(abs(a - b) for a, b in zip(got, sorted(want))))
    # r=7 is checked through the stated relabelling onto X_4(1,1)
    x7 = sorted(invariant_profile(Params(4, 7)).x_tuple[1:])
    worst = max(worst, max(abs(a - b) for a, b in zip(x7, sorted(multisets[1]))))
    ok = worst < 1e-12
    record(6, ok, f"X-tuples p=2,3 (ordered) and p=4 (multisets), max deviation {worst:.1e}")
    assert ok


def test_criterion_07_class_counts():
    small = [len(enumerate_classes(p)) for p in range(1, 5)]
    t0 = time.perf_counter()
    mismatches = [p for p in range(1, 201) if len(enumerate_classes(p)) != count_classes(2 * p + 1)]
    elapsed = time.perf_counter() - t0
    ok = small == [2, 4, 2, 2] and not mismatches and elapsed < 1
    record(7, ok, f"class counts p=1..4 {small}; counting formula agrees for p<=200 "
                  f"({len(mismatches)} mismatches, {elapsed:.2f}s)")
    assert ok


def test_criterion_08_jacobi_determinant():
    cases = [(p, r) for p in range(1, 21) for r in valid_r(p)]
    worst = max(abs(jacobi_det_product(p, r) - jacobi(r, 2 * p + 1)) for p, r in cases)
    ok = worst < 1e-8 and all(check_jacobi_det(p, r, 1e-8) for p, r in cases)
    record(8, ok, f"det H det G = (r|2p+1) for {len(cases)} (p<=20, r), max deviation {worst:.1e}")
    assert ok


def test_criterion_09_gauss_sums():
    worst_g = 0.0
    count = 0
    for n in range(3, 202, 2):
        for r in range(1, n):
            if math.gcd(r, n) == 1:
                worst_g = max(worst_g, abs(quadratic_gauss_sum(r, n) - gauss_sum_closed_form(r, n)))
                count += 1
    worst_e = 0.0
    for n in range(3, 100, 2):
        for q in range(1, n):
            if math.gcd(q, n) == 1:
                worst_e = max(worst_e, abs(eisenstein_jacobi(q, n) - jacobi(q, n)))
    ok = worst_g < TOL and worst_e < TOL
    record(9, ok, f"{count} Gauss sums (n<=201) dev {worst_g:.1e}; Eisenstein products (n<=99) dev {worst_e:.1e}")
    assert ok


def test_criterion_10_identity_suite():
    worst, bad, total = 0.0, 0, 0
    for P in params_upto(6):
        rep = check_appendix_identities(P.p, P.r, P.kappa, tolerance=TOL)
        worst, bad, total = max(worst, rep.max_residual), bad + len(rep.violations), total + rep.equations_checked
    ok = bad == 0 and worst < TOL
    record(10, ok, f"{total} Gauss-sum identity evaluations (p<=6, all r, kappa, i1, i2), max residual {worst:.1e}")
    assert ok


def test_criterion_11_mutation_sensitivity():
    undetected, tried = [], 0
    for P in all_params(1):
        f = build_fstore(P)
        r = build_rstore(P, f.ring)
        for key, value in f.symbols.items():
            if value == 0:
                continue  # a sign flip of an exact zero changes nothing
            bad = mutate_f(f, key)
            tried += 1
            if check_pentagon(bad, TOL).passed and check_hexagon(bad, r, TOL).passed:
                undetected.append((P, key))
    ok = not undetected and tried > 0
    record(11, ok, f"{tried} single-entry sign flips at p=1, {len(undetected)} undetected")
    assert ok, undetected[:5]


def test_criterion_12_determinism(capsys):
    outs = {}
    for jobs in ("1", "2", "5"):
        for extra, code in (([], 0), (["--r", "5", "--mutate", "F:psi+,psi-,psi+,psi-:1,1"], 1)):
            assert main(["verify", "--p", "4", "--json", "--jobs", jobs] + (extra or ["--all"])) == code
            outs.setdefault(tuple(extra), set()).add(capsys.readouterr().out)
    ok = all(len(v) == 1 for v in outs.values())
    record(12, ok, "verify --json reports byte-identical for --jobs 1, 2, 5 (clean and mutated stores)")
    assert ok
