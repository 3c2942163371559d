import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from liehy.errors import ConfigurationError, DomainError
from liehy.rootsys import (CartanSpec, build_root_system, dominant_decomposition,
                           enumerate_dominant_weights, is_singular, lattice_ball,
                           load_group, parse_group, singular_mask, weyl_dimension,
                           weyl_dimensions, weyl_group_order)

from conftest import SUPPORTED

N_POSITIVE = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6,
              "T1": 0, "T2": 0}
ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "D4": 192, "G2": 12,
          "T1": 1, "T2": 1}


def test_a1_structure():
    rs = build_root_system("A1")
    assert rs.positive_roots.tolist() == [[2]]
    np.testing.assert_allclose(rs.gram, [[0.5]])
    assert rs.inner(rs.positive_roots[0], rs.positive_roots[0]) == pytest.approx(2.0)


def test_a2_roots_and_delta():
    rs = build_root_system("A2")
    # alpha_1 = (2,-1), alpha_2 = (-1,2), alpha_1 + alpha_2 = (1,1)
    assert sorted(map(tuple, rs.positive_roots)) == [(-1, 2), (1, 1), (2, -1)]
    assert rs.delta.tolist() == [1, 1]
    np.testing.assert_allclose(rs.gram, [[2 / 3, 1 / 3], [1 / 3, 2 / 3]])


def test_abelian_degenerate():
    rs = build_root_system("T1")
    assert rs.n_positive == 0 and rs.delta.tolist() == [0]
    assert load_group("T1").wg.order == 1


@pytest.mark.parametrize("text", ["B1", "D2", "G3", "E6", "A0", "xyz", ""])
def test_inadmissible(text):
    with pytest.raises(ConfigurationError):
        parse_group(text)


def test_parse_case_insensitive():
    assert parse_group(" a2 ").name == "A2"
    assert parse_group("g_2").name == "G2"


@pytest.mark.parametrize("name", SUPPORTED)
def test_root_system_invariants(name):
    g = load_group(name)
    rs, wg = g.rs, g.wg
    assert rs.n_positive == N_POSITIVE[name]
    assert wg.order == ORDERS[name] == weyl_group_order(rs.spec)
    np.testing.assert_allclose(rs.gram, rs.gram.T)
    assert np.all(np.linalg.eigvalsh(rs.gram) > 0)
    if rs.n_positive:
        assert np.all(rs.delta == 1)
        assert np.all(rs.root_pairings(rs.delta) > 0)
        lengths = rs.inner(rs.positive_roots, rs.positive_roots)
        assert lengths.max() == pytest.approx(2.0)


@pytest.mark.parametrize("name", SUPPORTED)
def test_weyl_group_invariants(name):
    g = load_group(name)
    rs, wg = g.rs, g.wg
    els = wg.elements
    assert np.issubdtype(els.dtype, np.integer)
    assert set(np.rint(wg.dets).astype(int).tolist()) <= {-1, 1}
    keys = {m.tobytes() for m in els}
    assert np.eye(rs.rank, dtype=els.dtype).tobytes() in keys
    roots = np.vstack([rs.positive_roots, -rs.positive_roots]) if rs.n_positive else None
    for m in els:
        np.testing.assert_allclose(m.T @ rs.gram @ m, rs.gram, atol=1e-12)
        assert np.linalg.inv(m).round().astype(els.dtype).tobytes() in keys
        if roots is not None:
            image = roots @ m.T
            assert sorted(map(tuple, image)) == sorted(map(tuple, roots))
            # delta is regular: only the identity fixes it
            if not np.array_equal(m, np.eye(rs.rank)):
                assert not np.array_equal(m @ rs.delta, rs.delta)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_weyl_group_closed_under_products(name):
    wg = load_group(name).wg
    keys = {m.tobytes() for m in wg.elements}
    for a in wg.elements:
        for b in wg.elements:
            assert (a @ b).tobytes() in keys


def test_weyl_dimension_a1():
    rs = build_root_system("A1")
    assert [weyl_dimension(rs, [n]) for n in range(51)] == list(range(1, 52))


def test_weyl_dimension_a2_table():
    rs = build_root_system("A2")
    table = {(0, 0): 1, (1, 0): 3, (0, 1): 3, (1, 1): 8, (2, 0): 6, (3, 0): 10}
    for lam, d in table.items():
        assert weyl_dimension(rs, lam) == d


def test_weyl_dimension_known_reps():
    # spin and vector representations, adjoint of G2
    assert weyl_dimension(build_root_system("B2"), [0, 1]) == 4
    assert weyl_dimension(build_root_system("B2"), [1, 0]) == 5
    assert weyl_dimension(build_root_system("G2"), [1, 0]) == 7
    assert weyl_dimension(build_root_system("G2"), [0, 1]) == 14
    assert weyl_dimension(build_root_system("D4"), [0, 1, 0, 0]) == 28


def test_weyl_dimension_rejects_nondominant():
    with pytest.raises(DomainError):
        weyl_dimension(build_root_system("A2"), [-1, 0])


@given(st.sampled_from(["A1", "A2", "B2", "G2", "A3"]), st.sampled_from([0.5, 2.0, 10.0]),
       st.data())
def test_weyl_dimension_scale_invariant(name, c, data):
    rs = build_root_system(name)
    lam = data.draw(st.lists(st.integers(0, 6), min_size=rs.rank, max_size=rs.rank))
    assert weyl_dimension(rs, lam) == weyl_dimension(rs.rescaled(c), lam)


def test_enumerate_a1():
    rs = build_root_system("A1")
    cutoff = math.sqrt(rs.gram[0, 0]) * 11
    assert enumerate_dominant_weights(rs, cutoff)[:, 0].tolist() == list(range(11))


def test_enumerate_a2_small():
    rs = build_root_system("A2")
    got = {tuple(w) for w in enumerate_dominant_weights(rs, 3.0)}
    assert {(0, 0), (1, 0), (0, 1), (1, 1)} <= got
    for w in got:
        nu = np.array(w) + 1
        assert rs.inner(nu, nu) <= 3.0 ** 2 + 1e-12


def test_enumerate_abelian():
    rs = build_root_system("T1")
    assert enumerate_dominant_weights(rs, 3.0)[:, 0].tolist() == [-3, -2, -1, 0, 1, 2, 3]


@given(st.sampled_from(["A1", "A2", "B2", "G2"]), st.floats(1.0, 8.0))
def test_enumerate_sorted_and_complete(name, cutoff):
    rs = build_root_system(name)
    w = enumerate_dominant_weights(rs, cutoff)
    assert [tuple(x) for x in w] == sorted(tuple(x) for x in w)
    ball = lattice_ball(rs, cutoff + 10)
    ball = ball[np.all(ball >= 0, axis=1)]
    nu = ball + rs.delta
    expect = ball[rs.inner(nu, nu) <= cutoff ** 2 * (1 + 1e-12)]
    assert sorted(map(tuple, expect)) == [tuple(x) for x in w]


def test_is_singular_examples():
    a1, a2 = build_root_system("A1"), build_root_system("A2")
    assert is_singular(a1, np.array([0.0]))
    assert not is_singular(a1, a1.delta)
    assert is_singular(a2, np.array([1, -1]))
    assert is_singular(a2, np.array([1.0, -1.0 + 1e-12]))
    assert not is_singular(build_root_system("T1"), np.array([0]))


def test_dominant_decomposition_examples():
    g = load_group("A1")
    w, mu = dominant_decomposition(g.rs, g.wg, np.array([-3]))
    assert mu.tolist() == [2]
    assert g.wg.dets[w] == -1
    w, mu = dominant_decomposition(g.rs, g.wg, g.rs.delta)
    assert np.array_equal(g.wg.elements[w], np.eye(1)) and mu.tolist() == [0]
    with pytest.raises(DomainError):
        dominant_decomposition(g.rs, g.wg, np.array([0]))


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3"])
def test_lattice_bijection(name):
    """W(mu + delta) over dominant mu covers the regular lattice ball exactly once."""
    g = load_group(name)
    rs, wg = g.rs, g.wg
    cutoff = 6.0
    mus = enumerate_dominant_weights(rs, cutoff)
    images = [tuple(m @ (mu + rs.delta)) for m in wg.elements for mu in mus]
    assert len(images) == len(set(images))
    ball = lattice_ball(rs, cutoff)
    regular = ball[~singular_mask(rs, ball)]
    assert set(images) == set(map(tuple, regular))
    for lam in regular[:: max(1, len(regular) // 40)]:
        w, mu = dominant_decomposition(rs, wg, lam)
        assert np.array_equal(wg.elements[w] @ (mu + rs.delta), lam)


def test_weyl_dimensions_vectorised():
    rs = build_root_system("B2")
    w = enumerate_dominant_weights(rs, 6.0)
    assert weyl_dimensions(rs, w).tolist() == [weyl_dimension(rs, x) for x in w]
