from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from borelhsp import hsp
from borelhsp.errors import PromiseViolation
from borelhsp.ff import FieldElement, make_field
from borelhsp.pgroup import INF, borel, stabilizer
from oracles import naive_affine_pgl_distribution

F5, F7, F9 = make_field(5), make_field(7), make_field(3, 2)
SMALL = [F5, F7, F9]


def columns(ctx):
    """A square and a non-square column."""
    return [1, ctx.generator]


@pytest.mark.parametrize("flavor", ["PGL", "PSL", "SL"])
@pytest.mark.parametrize("ctx", SMALL, ids=lambda c: c.label)
def test_three_routes_agree(flavor, ctx):
    for b in range(ctx.q):
        for col in columns(ctx):
            brute = hsp.brute_force_distribution_oracle(flavor, ctx, b, col)
            cond = hsp.conditional_row_fourier_distribution(flavor, ctx, b, col)
            closed = hsp.closed_form_distribution(flavor, ctx, b, col)
            assert brute.is_valid()
            assert brute.max_abs_diff(cond) < 1e-9
            assert brute.max_abs_diff(closed) < 1e-9
            assert brute.peak() == b


@pytest.mark.parametrize("p", [5, 7, 11])
def test_pgl_matches_independent_amplitude_oracle(p):
    ctx = make_field(p)
    for b in range(p):
        brute = hsp.brute_force_distribution_oracle("PGL", ctx, b)
        assert np.abs(brute.probs - naive_affine_pgl_distribution(p, b)).max() < 1e-9


def test_pgl_symbolic_identity():
    for q in (5, 7, 9, 11, 13):
        assert Fraction(q - 1, q) + (q - 1) * Fraction(1, q * (q - 1)) == 1


@pytest.mark.parametrize("ctx", SMALL, ids=lambda c: c.label)
def test_fourier_is_unitary(ctx):
    for flavor in ("PGL", "PSL", "SL"):
        F = hsp.borel_structure(flavor, ctx).fourier
        assert np.abs(F @ F.conj().T - np.eye(len(F))).max() < 1e-9


@pytest.mark.parametrize("flavor", ["PGL", "PSL", "SL"])
def test_irreps_are_homomorphisms(flavor):
    s = hsp.borel_structure(flavor, F7)
    for irrep in s.irreps:
        for x in s.coords[::5]:
            for y in s.coords[::3]:
                lhs = s.matrix(irrep, s.compose_coords(x, y))
                assert np.abs(lhs - s.matrix(irrep, x) @ s.matrix(irrep, y)).max() < 1e-9


@pytest.mark.parametrize("flavor", ["PGL", "PSL", "SL"])
def test_weak_measurement_matches_character_formula(flavor):
    """P(sigma) = (d / |B|) sum over h in H of chi_sigma(h)."""
    ctx = F7
    b = FieldElement(ctx, 3)
    f = hsp.make_stabilizer_oracle(flavor, ctx, b)
    B = borel(flavor, ctx)
    s = hsp.borel_structure(flavor, ctx)
    weak = hsp.weak_measurement_distribution(hsp.coset_state(flavor, ctx, hsp.restrict_oracle(f, B)))
    H = stabilizer(flavor, ctx, [INF, b]).elements
    for irrep in s.irreps:
        chi = sum(np.trace(s.matrix(irrep, s.coords[s.index[h]])) for h in H)
        assert abs(weak[irrep.label] - irrep.dim * chi.real / s.order) < 1e-9


@pytest.mark.parametrize("ctx", [F5, F7, F9, make_field(11), make_field(13)], ids=lambda c: c.label)
def test_weak_measurement_masses(ctx):
    q = ctx.q
    pgl = hsp.weak_measurement_distribution(
        hsp.coset_state("PGL", ctx, hsp.restrict_oracle(hsp.make_stabilizer_oracle("PGL", ctx, ctx.one),
                                                        borel("PGL", ctx))))
    assert abs(pgl["rho"] - (1 - 1 / q)) < 1e-9
    psl = hsp.weak_measurement_distribution(
        hsp.coset_state("PSL", ctx, hsp.restrict_oracle(hsp.make_stabilizer_oracle("PSL", ctx, ctx.one),
                                                        borel("PSL", ctx))))
    assert abs(psl["trivial"] - 1 / q) < 1e-9
    assert abs(psl["rho+"] - (q - 1) / (2 * q)) < 1e-9 and abs(psl["rho-"] - (q - 1) / (2 * q)) < 1e-9
    emb = hsp.weak_measurement_distribution(hsp.embedded_coset_state(ctx, 1))
    assert abs(emb["trivial"] - 1 / (2 * q)) < 1e-9 and abs(emb["sign"] - 1 / (2 * q)) < 1e-9
    assert abs(emb["rho"] - (1 - 1 / q)) < 1e-9


def test_sl_pipeline_equals_psl():
    for b in range(5):
        for col in columns(F5):
            sl = hsp.brute_force_distribution_oracle("SL", F5, b, col)
            psl = hsp.brute_force_distribution_oracle("PSL", F5, b, col)
            assert sl.max_abs_diff(psl) < 1e-9


def test_relabel_invariance():
    f = hsp.make_stabilizer_oracle("PSL", F7, F7.element(2))
    base = hsp.brute_force_distribution_oracle("PSL", F7, 2, oracle=f)
    for seed in range(3):
        other = hsp.brute_force_distribution_oracle("PSL", F7, 2, oracle=hsp.relabel(f, seed))
        assert base.max_abs_diff(other) < 1e-12


@pytest.mark.parametrize("ctx", [F5, F7, F9, make_field(11), make_field(13)], ids=lambda c: c.label)
def test_psl_offpeak_forms(ctx):
    forms = hsp.psl_offpeak_forms(ctx, 2)
    assert forms.normalizes
    assert not hsp.psl_offpeak_forms(ctx, 4).normalizes
    dist = hsp.brute_force_distribution_oracle("PSL", ctx, 0)
    off = sorted(dist.probs[1:])
    expected = sorted(v for v, m in forms.offpeak.items() for _ in range(m))
    assert np.abs(np.array(off) - np.array(expected)).max() < 1e-9
    if forms.d_parity == "even":
        assert list(forms.offpeak.values()) == [(ctx.q - 1) // 2] * 2


def test_promise_violation():
    f = hsp.make_stabilizer_oracle("PGL", F5, F5.one)
    bad = dict(f.colors)
    bad[borel("PGL", F5).elements[0]] = "odd one out"
    broken = hsp.HidingOracle(f.group, bad, f.hidden)
    with pytest.raises(PromiseViolation):
        hsp.restrict_oracle(broken, borel("PGL", F5))
    with pytest.raises(PromiseViolation):
        f("not an element")


def test_infinity_detected_classically():
    for flavor in ("PGL", "PSL", "SL"):
        f = hsp.make_stabilizer_oracle(flavor, F9, INF)
        res = hsp.recover_hidden_point(f, flavor, F9, seed=0)
        assert res.recovered is INF and res.classical and res.queries <= 4


def test_default_sample_counts():
    assert hsp.default_sample_count("PGL", F9) == 14
    assert hsp.default_sample_count("PSL", F7) == 123
    assert abs(hsp.per_sample_shape("PSL", F7).sum() - 1) < 1e-12


def test_recovery_determinism_and_validation():
    f = hsp.make_stabilizer_oracle("PSL", F7, F7.element(5))
    a = hsp.recover_hidden_point(f, "PSL", F7, samples=30, seed=11)
    b = hsp.recover_hidden_point(f, "PSL", F7, samples=30, seed=11)
    assert a == b and a.recovered == F7.element(5)
    assert sum(a.histogram.values()) == 30
    assert 0 <= a.confidence <= 1
    with pytest.raises(ValueError):
        hsp.recover_hidden_point(f, "PSL", F7, samples=0)
    with pytest.raises(ValueError):
        hsp.brute_force_distribution_oracle("GL", F7, 0)


@settings(max_examples=25)
@given(st.integers(0, 8), st.integers(0, 10**6))
def test_recovery_pgl9_property(b, seed):
    f = hsp.make_stabilizer_oracle("PGL", F9, F9.element(b))
    res = hsp.recover_hidden_point(f, "PGL", F9, samples=25, seed=seed)
    assert res.recovered == F9.element(b)


def test_measurement_table_sums_to_one():
    state = hsp.coset_state("PSL", F9, hsp.restrict_oracle(hsp.make_stabilizer_oracle("PSL", F9, F9.one),
                                                           borel("PSL", F9)))
    assert abs(sum(o.p for o in hsp.measurement_table(state)) - 1) < 1e-9


def test_distribution_json():
    d = hsp.closed_form_distribution("PGL", F9, (1, 1))
    js = d.to_json()
    assert js[4] == {"ell": [1, 1], "p": pytest.approx(8 / 9)}
    assert d[(1, 1)] == pytest.approx(8 / 9) and d[F9.element(4)] == d[4]
