import pytest
from hypothesis import given, strategies as st

from borelhsp import pgroup
from borelhsp.errors import (
    DuplicatePoints,
    EvenCharacteristic,
    FlavorMismatch,
    GroupTooLarge,
    NotInGroup,
    NotUpperTriangular,
)
from borelhsp.ff import make_field
from borelhsp.pgroup import INF, GroupElement, GroupFlavor
from oracles import naive_group_orders, naive_mobius

F5, F7, F9 = make_field(5), make_field(7), make_field(3, 2)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_orders_match_counting_oracle(p):
    ctx = make_field(p)
    got = tuple(len(pgroup.enumerate_group(fl, ctx)) for fl in ("GL", "SL", "PGL", "PSL"))
    assert got == naive_group_orders(p)


def test_order_formulas_gf9():
    assert len(pgroup.enumerate_group("PSL", F9)) == 360
    assert len(pgroup.enumerate_group("GL", F9)) == 80 * 72


def test_even_characteristic():
    F4 = make_field(2, 2)
    assert len(pgroup.enumerate_group("GL", F4)) == 15 * 12
    with pytest.raises(EvenCharacteristic):
        pgroup.enumerate_group("PSL", F4)


def test_budget():
    with pytest.raises(GroupTooLarge):
        pgroup.enumerate_group("GL", make_field(37))


def test_canonical_forms():
    a = GroupElement.make("PGL", F5, (2, 4, 0, 2))
    assert a.m == (1, 2, 0, 1)
    b = GroupElement.make("PSL", F5, (4, 0, 0, 4))
    assert b == GroupElement.make("PSL", F5, (1, 0, 0, 1))
    with pytest.raises(NotInGroup):
        GroupElement.make("SL", F5, (2, 0, 0, 1))
    with pytest.raises(NotInGroup):
        GroupElement.make("GL", F5, (1, 2, 2, 4))
    with pytest.raises(FlavorMismatch):
        GroupElement.make("GL", F5, (1, 0, 0, 1)) * GroupElement.make("SL", F5, (1, 0, 0, 1))


def test_action_matches_mobius_oracle():
    for g in pgroup.enumerate_group("PGL", F7):
        for i in range(8):
            x = None if i == 0 else i - 1
            y = naive_mobius(g.m, x, 7)
            assert pgroup.act_index(g, i) == (0 if y is None else y + 1)


def test_infinity_singleton():
    import pickle

    assert pickle.loads(pickle.dumps(INF)) is INF
    assert pgroup.point_label(INF) == "inf"


def test_stabilizer_sizes():
    assert len(pgroup.borel("PGL", F5)) == 20
    assert len(pgroup.stabilizer("PGL", F5, [INF, F5.zero])) == 4
    assert len(pgroup.stabilizer("PGL", F5, [INF, F5.zero, F5.one])) == 1
    assert len(pgroup.borel("PSL", F5)) == 10
    assert len(pgroup.borel("SL", F5)) == 20
    with pytest.raises(DuplicatePoints):
        pgroup.stabilizer("PGL", F5, [INF, INF])


@pytest.mark.parametrize("flavor", ["PGL", "PSL", "SL"])
def test_borel_conjugates(flavor):
    """q+1 distinct conjugates of B, one per point; w B w^-1 = G_0."""
    G = pgroup.enumerate_group(flavor, F7)
    B = pgroup.borel(flavor, F7).element_set
    conj = {frozenset(pgroup.conjugate(b, h) for b in B) for h in G}
    assert len(conj) == 8
    w = pgroup.weyl(flavor, F7)
    assert frozenset(pgroup.conjugate(b, w) for b in B) == pgroup.stabilizer(flavor, F7, [F7.zero]).element_set


@pytest.mark.parametrize("flavor", ["PGL", "PSL", "SL"])
def test_borel_decompose_roundtrip(flavor):
    B = pgroup.borel(flavor, F9)
    images = {}
    for g in B.elements:
        c = pgroup.borel_decompose(g)
        a, b = c.affine.a.value, c.affine.b.value
        alpha = c.alpha.value if c.alpha is not None else None
        assert pgroup.borel_element(flavor, F9, a, b, alpha) == g
        for x in F9.elements():
            assert pgroup.act(g, x) == c.affine(x)
        images.setdefault((a, b), []).append(g)
    sizes = {len(v) for v in images.values()}
    # SL -> AGL(1) has kernel {I, -I}
    assert sizes == ({2} if flavor == "SL" else {1})


def test_borel_decompose_rejects_lower():
    with pytest.raises(NotUpperTriangular):
        pgroup.borel_decompose(GroupElement.make("PGL", F5, (1, 0, 1, 1)))
    with pytest.raises(NotInGroup):
        pgroup.borel_element("PSL", F5, 2, 0)


def test_subgroup_explicit_closure():
    B = pgroup.borel("PGL", F5)
    assert len(pgroup.SubgroupDesc.explicit("PGL", F5, B.elements)) == 20
    with pytest.raises(NotInGroup):
        pgroup.SubgroupDesc.explicit("PGL", F5, [pgroup.borel_generators("PGL", F5)[1]])


elements = st.sampled_from(["GL", "SL", "PGL", "PSL"]).flatmap(
    lambda fl: st.lists(st.sampled_from(pgroup.enumerate_group(fl, F5)), min_size=3, max_size=3))


@given(elements)
def test_group_laws(gs):
    g, h, k = gs
    e = pgroup.identity(g.flavor, F5)
    assert (g * h) * k == g * (h * k)
    assert g * g.inverse() == e and g.inverse() * g == e
    assert g * e == g


@given(elements)
def test_action_is_homomorphism(gs):
    g, h, _ = gs
    for x in pgroup.projective_line(F5):
        assert pgroup.act(g * h, x) == pgroup.act(g, pgroup.act(h, x))


def test_json_and_flavor_parse():
    assert GroupFlavor.parse("psl") is GroupFlavor.PSL
    g = GroupElement.make("PGL", F9, (1, 3, 0, 1))
    assert g.to_json() == {"flavor": "PGL", "entries": [[1, 0], [0, 1], [0, 0], [1, 0]]}
