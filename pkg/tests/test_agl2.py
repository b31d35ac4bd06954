import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from borelhsp import agl2
from borelhsp.errors import DimensionTooLarge
from oracles import naive_gl2_count, rank_mod2


@pytest.mark.parametrize("d,order", [(1, 2), (2, 24), (3, 1344), (4, 322560)])
def test_agl_orders(d, order):
    assert agl2.agl2_order(d) == order
    assert agl2.agl2_action(d).order == order


@pytest.mark.parametrize("d", [1, 2, 3])
def test_gl_matches_rank_oracle(d):
    gl = agl2.enumerate_gl2(d)
    assert len(gl) == naive_gl2_count(d) == agl2.gl2_order(d)
    for A in gl:
        M = np.array([[(c >> i) & 1 for c in A] for i in range(d)])
        assert rank_mod2(M) == d


def test_identity_and_closure_d2():
    G = set(agl2.enumerate_agl2(2))
    e = agl2.AffineMap2(agl2.identity(2), 0)
    assert e in G
    for g, h in itertools.product(G, repeat=2):
        assert g * h in G


@pytest.mark.parametrize("d", [2, 3, 4])
def test_three_transitive(d):
    assert agl2.check_3transitive(d).b == 1


def test_not_four_transitive_d3():
    assert agl2.check_3transitive(3, 4).b < 1
    # d = 2 has exactly four points, so it is sharply 3- and 4-transitive
    assert agl2.check_3transitive(2, 4).b == Fraction(1)


def test_action_rows_match_elements():
    act = agl2.agl2_action(3)
    els = agl2.enumerate_agl2(3)
    for i in range(0, len(els), 37):
        assert act.perms[i].tolist() == [els[i](v) for v in range(8)]


@pytest.mark.parametrize("d", [2, 3])
def test_point_stabilizer_exhaustive(d):
    st_ = agl2.point1_stabilizer_structure(d)
    assert st_.ok and st_.order == agl2.agl2_order(d - 1)
    assert st_.pairs_checked == st_.order**2


def test_point_stabilizer_d4_sampled():
    st_ = agl2.point1_stabilizer_structure(4, max_pairs=5000)
    assert st_.ok and st_.order == 1344


@pytest.mark.parametrize("d", [2, 3, 4])
def test_orbit_stabilizer(d):
    assert agl2.gl_orbits(d) == [1, 2**d - 1]
    for P in (1, 2**d - 1):
        assert len(agl2.enumerate_gl2(d)) == (2**d - 1) * len(agl2.point_stabilizer(d, P))


def test_translation_conjugation_d3():
    assert all(agl2.translation_conjugates_stabilizer(3, P) for P in range(8))


def test_dimension_budget():
    with pytest.raises(DimensionTooLarge):
        agl2.enumerate_agl2(5)
    with pytest.raises(DimensionTooLarge):
        agl2.point1_stabilizer_structure(5)
    with pytest.raises(ValueError):
        agl2.point1_stabilizer_structure(1)


def test_to_affine_rejects_non_stabilizer():
    A = (2, 1, 4)  # swaps e_0 and e_1, fixes e_2: allowed
    assert agl2.to_affine(A).d == 2
    with pytest.raises(ValueError):
        agl2.to_affine((4, 2, 1))


maps3 = st.sampled_from(agl2.enumerate_agl2(3))


@given(maps3, maps3, st.integers(0, 7))
def test_affine_map_laws(g, h, v):
    assert (g * h)(v) == g(h(v))
    assert (g * g.inverse())(v) == v
    assert agl2.matmul(g.A, agl2.inverse(g.A)) == agl2.identity(3)
    assert agl2.transpose(agl2.transpose(g.A)) == g.A
