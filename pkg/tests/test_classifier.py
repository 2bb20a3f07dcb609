import itertools
import math

import pytest
from hypothesis import given, strategies as st

from metaplectic import Params, build_fstore, enumerate_classes, equivalent, invariant_profile
from metaplectic.classifier import x_value
from metaplectic.numtheory import count_classes, g_reduce, half_unit_group, square_orbit
from metaplectic.params import all_params, valid_r

R5 = math.sqrt(5)


def test_profile_examples():
    assert invariant_profile(Params(2, 1)).x_tuple == pytest.approx((1, -(1 + R5) / 4, -(1 + R5) / 4), abs=1e-15)
    assert invariant_profile(Params(2, 3)).x_tuple == pytest.approx((1, (R5 - 1) / 4, (R5 - 1) / 4), abs=1e-15)
    x4 = invariant_profile(Params(4, 1)).x_tuple
    assert x4[1] == pytest.approx(-math.cos(math.pi / 9), abs=1e-15)
    assert invariant_profile(Params(3, 5, -1)).orbit == square_orbit(5, 7)


@pytest.mark.parametrize("first, second, p, want", [
    ((1, 1), (3, 1), 2, False),
    ((1, 1), (5, 1), 4, True),
    ((3, 1), (3, -1), 5, False),
    ((1, -1), (7, -1), 4, True),
])
def test_equivalent_examples(first, second, p, want):
    assert equivalent(first, second, p) is want


def test_equivalent_rejects_invalid():
    with pytest.raises(ValueError):
        equivalent((2, 1), (1, 1), 2)


@pytest.mark.parametrize("p", range(1, 16))
def test_equivalence_relation(p):
    pairs = [(r, k) for r in valid_r(p) for k in (1, -1)]
    E = {(a, b): equivalent(a, b, p) for a in pairs for b in pairs}
    for a in pairs:
        assert E[a, a]
    for a, b in itertools.product(pairs, repeat=2):
        assert E[a, b] == E[b, a]
    for a, b, c in itertools.product(pairs, repeat=3):
        if E[a, b] and E[b, c]:
            assert E[a, c]


@pytest.mark.parametrize("p, count", [(1, 2), (2, 4), (3, 2), (4, 2), (7, 4), (12, 4)])
def test_class_counts(p, count):
    reps = enumerate_classes(p)
    assert len(reps) == count == count_classes(2 * p + 1)
    assert [k for _, k in reps] == sorted((k for _, k in reps), reverse=True)


def test_representatives_are_minimal_and_cover():
    for p in range(1, 40):
        reps = enumerate_classes(p)
        for r, k in ((r, k) for r in valid_r(p) for k in (1, -1)):
            hits = [rep for rep in reps if equivalent(rep, (r, k), p)]
            assert len(hits) == 1
            assert hits[0][0] <= r


@given(st.integers(1, 60), st.data())
def test_orbit_action_permutes_x_tuples(p, data):
    n = 2 * p + 1
    r = data.draw(st.sampled_from(valid_r(p)))
    z = data.draw(st.sampled_from(half_unit_group(n)))
    g = g_reduce(r * z * z, n)
    moved = g if g % 2 else n - g  # the valid (odd) parameter in that class
    for i in range(p + 1):
        assert abs(x_value(p, moved, i) - x_value(p, r, g_reduce(z * i, n))) < 1e-12


@pytest.mark.parametrize("p", range(1, 31))
def test_x_tuples_separate_orbits(p):
    n = 2 * p + 1
    for r1, r2 in itertools.combinations(valid_r(p), 2):
        if equivalent((r1, 1), (r2, 1), p):
            continue
        # inequivalent: no relabelling by the half-unit group matches the tuples
        for z in half_unit_group(n):
            diff = max(abs(x_value(p, r2, i) - x_value(p, r1, g_reduce(z * i, n))) for i in range(p + 1))
            assert diff > 1e-6


def _loop_monomials(store):
    ring = store.ring
    P = ring.psi_plus
    F = store.symbols
    return F[P, P, P, P, 0, 0], [
        F[P, P, P, P, ring.phi(i), ring.phi(i)] * F[P, ring.phi(i), P, ring.phi(i), P, P] for i in range(1, ring.p + 1)
    ]


@pytest.mark.parametrize("p", range(1, 5))
def test_equivalence_agrees_with_gauge_invariants(p):
    stores = {(P.r, P.kappa): build_fstore(P) for P in all_params(p)}
    n = 2 * p + 1
    for (a, fa), (b, fb) in itertools.product(stores.items(), repeat=2):
        ha, ma = _loop_monomials(fa)
        hb, mb = _loop_monomials(fb)
        related = abs(ha - hb) < 1e-12 and any(
            all(abs(mb[i - 1] - ma[g_reduce(z * i, n) - 1]) < 1e-12 for i in range(1, p + 1))
            for z in half_unit_group(n)
        )
        assert related == equivalent(a, b, p), (a, b)
