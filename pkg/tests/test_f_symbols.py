import cmath
import math

import numpy as np
import pytest

from metaplectic import Params, build_fstore, f_symbol
from metaplectic.f_symbols import (
    BLOCK_B,
    BLOCK_C,
    ZeroChannelError,
    block_A,
    block_D,
    build_G,
    build_H,
    j_entry,
)
from metaplectic.fusion_ring import ONE, admissible_quadruples
from metaplectic.params import all_params
from metaplectic.verifier import matrix_orthogonality_residual

from conftest import params_upto


def test_j_entry_examples():
    assert abs(j_entry(0, 0, 3, 5, -1) - (-1 / math.sqrt(7))) < 1e-15
    assert abs(j_entry(1, 1, 1, 1, 1) - 2 / math.sqrt(3) * cmath.exp(1j * math.pi / 3)) < 1e-15
    assert abs(j_entry(0, 1, 1, 1, 1) - math.sqrt(2) / math.sqrt(3)) < 1e-15


def test_blocks():
    assert np.allclose(block_A(1, 1, 1, -1), np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    r2 = math.sqrt(2)
    assert np.allclose(BLOCK_C, 0.5 * np.array([[1, -1, r2], [-1, 1, r2], [r2, r2, 0]]))
    c, s = math.cos(math.pi / 5), math.sin(math.pi / 5)
    assert np.allclose(block_D(2, 1, 1, -1, 1, 1, 1), [[-c, s], [s, c]])
    with pytest.raises(ValueError):
        block_A(1, 1, 1, 1)
    for m in (BLOCK_B, BLOCK_C, block_A(-1, 1, 1, 1)):
        assert matrix_orthogonality_residual(m) < 1e-15


def test_h_p1_matches_closed_matrix():
    H, _ = build_H(1, 1, 1)
    want = np.array([[1, math.sqrt(2)], [math.sqrt(2), -1]]) / math.sqrt(3)
    assert np.allclose(H, want, atol=1e-15)
    store = build_fstore(Params(1, 1, 1))
    P = store.ring.psi_plus
    m = store[P, P, P, P]
    assert m.rows == m.cols == (ONE, store.ring.phi(1))
    assert np.allclose(m.entries, want, atol=1e-15)


@pytest.mark.parametrize("p", range(1, 7))
@pytest.mark.parametrize("kappa", [1, -1])
def test_h00_sign(p, kappa):
    store = build_fstore(Params(p, 1, kappa))
    P = store.ring.psi_plus
    assert abs(f_symbol(store, P, P, P, P, ONE, ONE) - kappa / math.sqrt(2 * p + 1)) < 1e-15


@pytest.mark.parametrize("P", params_upto(6), ids=str)
def test_h_g_orthogonal(P):
    H, H2 = build_H(P.p, P.r, P.kappa)
    for m in (H, H2, build_G(P.p, P.r, P.kappa)):
        assert matrix_orthogonality_residual(m) < 1e-12


@pytest.mark.parametrize("p, r", [(1, 2), (2, 2), (3, 4)])
def test_even_r_breaks_orthogonality(p, r):
    H, _ = build_H(p, r, 1)
    assert matrix_orthogonality_residual(H) > 1e-3


@pytest.mark.parametrize("p", range(1, 7))
def test_diag_h_separates_parameters(p):
    seen = {}
    for P in all_params(p):
        diag = tuple(np.round(np.diag(build_H(p, P.r, P.kappa)[0]), 9))
        assert diag not in seen, (P, seen.get(diag))
        seen[diag] = P


@pytest.mark.parametrize("P", params_upto(4), ids=str)
def test_store_domain_and_rotation(stores, P):
    store, _ = stores(P)
    ring = store.ring
    assert sorted(store.table) == admissible_quadruples(ring)
    for (a, b, c, d), m in store.table.items():
        assert m.rows == tuple(e for e in ring.labels if ring.N[a, b, e] and ring.N[e, c, d])
        assert m.cols == tuple(f for f in ring.labels if ring.N[b, c, f] and ring.N[a, f, d])
        rot = store[b, c, d, a]
        assert np.array_equal(rot.entries, m.entries.T)
        if ONE in (a, b, c, d):
            assert m.entries.shape == (1, 1) and m.entries[0, 0] == 1


def test_zero_channel_error_is_distinct_from_zero_value(stores):
    store, _ = stores(Params(2, 1, 1))
    ring = store.ring
    f1 = ring.phi(1)
    with pytest.raises(ZeroChannelError):
        f_symbol(store, ring.psi_plus, ring.psi_plus, ring.psi_plus, ring.psi_plus, 1, ONE)
    # a genuine zero entry of block C
    zeros = [k for k, v in store.symbols.items() if v == 0]
    assert zeros and all(f_symbol(store, *k) == 0 for k in zeros)
    assert f_symbol(store, f1, ONE, f1, ONE, f1, f1) == 1


def test_build_is_deterministic():
    a = build_fstore(Params(3, 5, -1))
    b = build_fstore(Params(3, 5, -1))
    assert list(a.symbols.items()) == list(b.symbols.items())
