"""Hidden-subgroup simulation on the Borel subgroup.

Three independent routes produce the frequency distribution seen after
weak measurement, column measurement and the additive Fourier transform on
the rows:

* :func:`brute_force_distribution_oracle` builds the literal coset state on
  C[B] from oracle colours, applies the Fourier transform of B assembled from
  explicitly constructed irreps, and does all measurements by linear algebra.
* :func:`conditional_row_fourier_distribution` starts from the closed-form row
  vector and only performs the final transform numerically.
* :func:`closed_form_distribution` evaluates the Gauss-sum formula.

Fourier convention: for an irrep sigma of dimension d the coefficient matrix
of psi is sqrt(d/|B|) * sum_g psi(g) sigma(g)^dagger, and the additive
transform on C^q projects onto the characters, (1/sqrt q) sum_x conj(chi_l(x)) v_x.
With these choices the peak frequency equals the stabilized point.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence

import numpy as np

from .affine_rep import affine_group, squares_stabilizer
from .errors import PromiseViolation
from .ff import FieldCtx, FieldElement, Frequency, gauss_sum
from .pgroup import (
    INF,
    GroupFlavor,
    SubgroupDesc,
    act_index,
    borel,
    borel_decompose,
    borel_generators,
    enumerate_group,
    point_index,
    stabilizer,
)

TOL = 1e-9


# -- oracles ------------------------------------------------------------------

@dataclass
class HidingOracle:
    """f: group -> colour, constant on left cosets of ``hidden`` and distinct across them."""

    group: tuple
    colors: dict
    hidden: frozenset | None = None
    promise: bool = False
    queries: int = 0

    def __call__(self, g) -> Hashable:
        self.queries += 1
        try:
            return self.colors[g]
        except KeyError:
            raise PromiseViolation(f"{g} is outside the oracle's domain") from None

    def classes(self) -> list[list]:
        """Colour classes in group order (a superposition query; not counted)."""
        by = {}
        for g in self.group:
            by.setdefault(self.colors[g], []).append(g)
        return list(by.values())


def verify_promise(group: Sequence, colors: dict, hidden: frozenset) -> None:
    """Every colour class must be exactly one left coset xH."""
    by: dict = {}
    for g in group:
        by.setdefault(colors[g], []).append(g)
    for label, cls in by.items():
        x = cls[0]
        xi = x.inverse()
        if len(cls) != len(hidden) or {xi * y for y in cls} != hidden:
            raise PromiseViolation(f"colour {label!r} is not a left coset of the hidden subgroup")


def make_oracle(group: Sequence, hidden: Sequence) -> HidingOracle:
    """Oracle colouring each element by the smallest member of its left coset."""
    hidden = frozenset(hidden)
    colors = {}
    for g in group:
        if g in colors:
            continue
        coset = [g * h for h in hidden]
        label = min(coset)
        for x in coset:
            colors[x] = label
    verify_promise(group, colors, hidden)
    return HidingOracle(tuple(group), colors, hidden, True)


def make_stabilizer_oracle(flavor, ctx: FieldCtx, s) -> HidingOracle:
    """Oracle on the whole group hiding the one-point stabilizer G_s.

    The left coset g G_s is determined by g(s), so classes are grouped by that image.
    """
    flavor = GroupFlavor.parse(flavor)
    group = enumerate_group(flavor, ctx)
    si = point_index(s)
    hidden = stabilizer(flavor, ctx, [s]).element_set
    by: dict[int, list] = {}
    for g in group:
        by.setdefault(act_index(g, si), []).append(g)
    colors = {}
    for cls in by.values():
        label = min(cls)
        for g in cls:
            colors[g] = label
    verify_promise(group, colors, hidden)
    return HidingOracle(tuple(group), colors, hidden, True)


def restrict_oracle(f: HidingOracle, B: SubgroupDesc) -> HidingOracle:
    """Same colours, domain cut down to B; hides B intersected with the original subgroup."""
    colors = {g: f.colors[g] for g in B.elements}
    hidden = None if f.hidden is None else frozenset(g for g in B.elements if g in f.hidden)
    if hidden is not None:
        verify_promise(B.elements, colors, hidden)
    return HidingOracle(tuple(B.elements), colors, hidden, hidden is not None)


def relabel(f: HidingOracle, seed: int = 0) -> HidingOracle:
    """Replace colours by a random permutation of integers; the hidden subgroup is unchanged."""
    labels = sorted(set(f.colors.values()))
    perm = np.random.default_rng(seed).permutation(len(labels))
    new = {lab: int(perm[i]) for i, lab in enumerate(labels)}
    return HidingOracle(f.group, {g: new[c] for g, c in f.colors.items()}, f.hidden, f.promise)


def classical_equal_point_test(f: HidingOracle, B: SubgroupDesc) -> bool:
    """True iff f is constant on B, checked on the identity and two generators of B."""
    gens = borel_generators(B.flavor, B.ctx)
    e = gens[0] * gens[0].inverse()
    base = f(e)
    return all(f(g) == base for g in gens)


# -- Borel structure and its irreps ---------------------------------------------

@dataclass(frozen=True)
class IrrepSpec:
    label: str
    dim: int
    kind: str  # "char" or "large"
    t: int = 0  # character index (kind == "char")
    c: int = 1  # orbit representative frequency (kind == "large")
    lam: int = 0  # kernel character index (kind == "large")


@dataclass(frozen=True, eq=False)
class BorelStructure:
    """B as F_q x| M with M cyclic of order N acting by multiplication with g_phi^tau.

    Elements carry coordinates (tau, beta); the group law is
    (tau, beta)(tau', beta') = (tau + tau' mod N, beta + g_phi^tau beta').
    """

    ctx: FieldCtx
    name: str
    elements: tuple
    coords: tuple[tuple[int, int], ...]
    N: int
    g_phi: int

    @functools.cached_property
    def index(self) -> dict:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @functools.cached_property
    def r(self) -> int:
        """Multiplicative order of g_phi: the common dimension of the large irreps."""
        ctx = self.ctx
        return (ctx.q - 1) // math.gcd(ctx.log[self.g_phi], ctx.q - 1)

    def compose_coords(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        ctx = self.ctx
        t, b = x
        u, d = y
        return ((t + u) % self.N, ctx.add(b, ctx.mul(ctx.pow(self.g_phi, t), d)))

    @functools.cached_property
    def irreps(self) -> tuple[IrrepSpec, ...]:
        ctx = self.ctx
        out = []
        for t in range(self.N):
            if t == 0:
                label = "trivial"
            elif self.N == ctx.q - 1 and 2 * t == self.N:
                label = "sign"
            else:
                label = f"chi_{t}"
            out.append(IrrepSpec(label, 1, "char", t=t))
        r = self.r
        n_orbits = (ctx.q - 1) // r
        n_lam = self.N // r
        for u in range(n_orbits):
            c = ctx.exp[u]
            for lam in range(n_lam):
                label = "rho"
                if n_orbits == 2:
                    label += "+" if u == 0 else "-"
                elif n_orbits > 2:
                    label += f"[c={c}]"
                if n_lam > 1:
                    label += f"[lam={lam}]"
                out.append(IrrepSpec(label, r, "large", c=c, lam=lam))
        return tuple(out)

    def row_frequencies(self, irrep: IrrepSpec) -> list[int]:
        """Field elements labelling the rows (and columns) of a large irrep."""
        ctx = self.ctx
        return [ctx.mul(irrep.c, ctx.pow(self.g_phi, j)) for j in range(irrep.dim)]

    def matrix(self, irrep: IrrepSpec, coord: tuple[int, int]) -> np.ndarray:
        ctx = self.ctx
        tau, beta = coord
        if irrep.kind == "char":
            return np.array([[np.exp(2j * np.pi * irrep.t * tau / self.N)]])
        r = irrep.dim
        kern = self.N // r
        out = np.zeros((r, r), dtype=complex)
        for j, x in enumerate(self.row_frequencies(irrep)):
            w, k = divmod(j + tau, r)
            phase = ctx.dot(beta, x) / ctx.p + irrep.lam * w / kern
            out[j, k] = np.exp(2j * np.pi * phase)
        return out

    @functools.cached_property
    def fourier(self) -> np.ndarray:
        """Unitary F with (F psi)[(sigma, r, c)] = sqrt(d/|B|) sum_g psi(g) conj(sigma(g)[c, r])."""
        n = self.order
        rows = []
        for irrep in self.irreps:
            mats = np.array([self.matrix(irrep, x) for x in self.coords])  # (|B|, d, d)
            d = irrep.dim
            scale = math.sqrt(d / n)
            for r in range(d):
                for c in range(d):
                    rows.append(scale * mats[:, c, r].conj())
        F = np.array(rows)
        assert F.shape == (n, n), "irrep dimensions must account for |B|"
        return F

    @functools.cached_property
    def blocks(self) -> list[tuple[IrrepSpec, slice]]:
        out, pos = [], 0
        for irrep in self.irreps:
            out.append((irrep, slice(pos, pos + irrep.dim**2)))
            pos += irrep.dim**2
        return out


def _check_pipeline_flavor(flavor: GroupFlavor) -> None:
    if flavor is GroupFlavor.GL:
        raise ValueError("the Borel pipeline covers SL, PSL and PGL only")


@functools.cache
def borel_structure(flavor, ctx: FieldCtx) -> BorelStructure:
    flavor = GroupFlavor.parse(flavor)
    _check_pipeline_flavor(flavor)
    B = borel(flavor, ctx)
    g = ctx.generator
    coords = []
    for el in B.elements:
        bc = borel_decompose(el)
        a, beta = bc.affine.a.value, bc.affine.b.value
        if flavor is GroupFlavor.PGL:
            tau = ctx.log[a]
        elif flavor is GroupFlavor.PSL:
            tau = ctx.log[a] // 2
        else:
            tau = ctx.log[bc.alpha.value]
        coords.append((tau, beta))
    if flavor is GroupFlavor.PGL:
        N, g_phi = ctx.q - 1, g
    elif flavor is GroupFlavor.PSL:
        N, g_phi = (ctx.q - 1) // 2, ctx.mul(g, g)
    else:
        N, g_phi = ctx.q - 1, ctx.mul(g, g)
    return BorelStructure(ctx, f"{flavor.value}-B", B.elements, tuple(coords), N, g_phi)


@functools.cache
def affine_structure(ctx: FieldCtx) -> BorelStructure:
    """The full affine group AGL(1; q), used to analyse the PSL case by embedding."""
    els = tuple(affine_group(ctx))
    coords = tuple((ctx.log[x.a.value], x.b.value) for x in els)
    return BorelStructure(ctx, "AGL(1)", els, coords, ctx.q - 1, ctx.generator)


# -- coset states and measurements -----------------------------------------------

@dataclass
class CosetState:
    structure: BorelStructure
    density: np.ndarray

    @classmethod
    def from_classes(cls, structure: BorelStructure, classes: Sequence[Sequence]) -> "CosetState":
        """rho_H = sum over colour classes C of (|C|/|B|) |C><C|."""
        n = structure.order
        rho = np.zeros((n, n), dtype=complex)
        for cls_ in classes:
            v = np.zeros(n)
            v[[structure.index[g] for g in cls_]] = 1.0
            rho += np.outer(v, v) / n
        return cls(structure, rho)

    @classmethod
    def from_oracle(cls, structure: BorelStructure, f: HidingOracle) -> "CosetState":
        return cls.from_classes(structure, f.classes())

    @functools.cached_property
    def fourier_density(self) -> np.ndarray:
        F = self.structure.fourier
        return F @ self.density @ F.conj().T

    def block(self, irrep: IrrepSpec) -> np.ndarray:
        """The (d^2 x d^2) block of the transformed state, indices (row, col) row-major."""
        for spec, sl in self.structure.blocks:
            if spec == irrep:
                return self.fourier_density[sl, sl]
        raise KeyError(irrep.label)


def coset_state(flavor, ctx: FieldCtx, f: HidingOracle) -> CosetState:
    """Coset state on C[B] from a hiding oracle already restricted to B."""
    return CosetState.from_oracle(borel_structure(flavor, ctx), f)


def embedded_coset_state(ctx: FieldCtx, b) -> CosetState:
    """Coset state in AGL(1; q) of the square-multiplier stabilizer of b."""
    bv = b.value if isinstance(b, FieldElement) else int(b)
    a = FieldElement(ctx, ctx.mul(ctx.generator, ctx.generator))
    hidden = squares_stabilizer(a, FieldElement(ctx, bv))
    struct = affine_structure(ctx)
    f = make_oracle(struct.elements, hidden)
    return CosetState.from_oracle(struct, f)


def weak_measurement_distribution(state: CosetState) -> dict[str, float]:
    """Probability of each irrep label (block trace of the transformed state)."""
    out = {}
    for irrep, sl in state.structure.blocks:
        out[irrep.label] = float(np.real(np.trace(state.fourier_density[sl, sl])))
    return out


@functools.cache
def _row_transform(ctx: FieldCtx) -> np.ndarray:
    """U[l, x] = conj(chi_l(x)) / sqrt(q), indices are field elements."""
    return np.exp(-2j * np.pi * ctx.dot_table / ctx.p) / math.sqrt(ctx.q)


@dataclass
class Distribution:
    ctx: FieldCtx
    probs: np.ndarray  # indexed by the field element identified with each frequency

    def __getitem__(self, ell) -> float:
        if isinstance(ell, FieldElement):
            ell = ell.value
        elif isinstance(ell, tuple):
            ell = self.ctx.from_coeffs(ell)
        return float(self.probs[ell])

    @property
    def total(self) -> float:
        return float(self.probs.sum())

    def items(self) -> list[tuple[Frequency, float]]:
        return [(self.ctx.coeffs(v), float(p)) for v, p in enumerate(self.probs)]

    def peak(self) -> int:
        return int(np.argmax(self.probs))

    def is_valid(self, tol: float = TOL) -> bool:
        return bool(self.probs.min() >= -1e-12 and abs(self.total - 1) < tol)

    def max_abs_diff(self, other: "Distribution") -> float:
        return float(np.abs(self.probs - other.probs).max())

    def to_json(self) -> list[dict]:
        return [{"ell": list(k), "p": p} for k, p in self.items()]


def _row_distribution(ctx: FieldCtx, rows: Sequence[int], R: np.ndarray) -> np.ndarray:
    """Frequency probabilities for a row density R supported on field elements ``rows``."""
    U = _row_transform(ctx)[:, list(rows)]
    return np.real(np.einsum("lr,rs,ls->l", U, R, U.conj()))


def column_conditional(state: CosetState, column: int) -> tuple[float, np.ndarray]:
    """Measure the column of every large irrep containing ``column``; transform the rows.

    Returns the joint probability of observing that column (summed over those
    irreps) and the conditional frequency distribution.
    """
    struct = state.structure
    ctx = struct.ctx
    total_p = 0.0
    dist = np.zeros(ctx.q)
    for irrep, sl in struct.blocks:
        if irrep.kind != "large":
            continue
        freqs = struct.row_frequencies(irrep)
        if column not in freqs:
            continue
        c = freqs.index(column)
        d = irrep.dim
        blk = state.fourier_density[sl, sl]
        idx = [r * d + c for r in range(d)]
        R = blk[np.ix_(idx, idx)]
        pc = float(np.real(np.trace(R)))
        total_p += pc
        if pc > 1e-15:
            dist += _row_distribution(ctx, freqs, R)
    if total_p <= 1e-15:
        raise ValueError(f"column {column} is never observed")
    return total_p, dist / total_p


@dataclass(frozen=True)
class Outcome:
    irrep: str
    column: int | None
    ell: int | None
    p: float


def measurement_table(state: CosetState) -> list[Outcome]:
    """Joint distribution of (irrep, column, frequency) for one shot."""
    struct = state.structure
    ctx = struct.ctx
    out = []
    for irrep, sl in struct.blocks:
        blk = state.fourier_density[sl, sl]
        p_irrep = float(np.real(np.trace(blk)))
        if p_irrep <= 1e-15:
            continue
        if irrep.kind == "char":
            out.append(Outcome(irrep.label, None, None, p_irrep))
            continue
        freqs = struct.row_frequencies(irrep)
        d = irrep.dim
        for c, col in enumerate(freqs):
            idx = [r * d + c for r in range(d)]
            R = blk[np.ix_(idx, idx)]
            pc = float(np.real(np.trace(R)))
            if pc <= 1e-15:
                continue
            probs = _row_distribution(ctx, freqs, R)
            for ell in range(ctx.q):
                if probs[ell] > 1e-15:
                    out.append(Outcome(irrep.label, col, ell, float(probs[ell])))
    return out


# -- the three distribution routes -------------------------------------------------

def _as_int(ctx: FieldCtx, x) -> int:
    if isinstance(x, FieldElement):
        return x.value
    if isinstance(x, tuple):
        return ctx.from_coeffs(x)
    return int(x)


def brute_force_distribution_oracle(flavor, ctx: FieldCtx, b, column=1, oracle: HidingOracle | None = None) -> Distribution:
    """Ground truth by direct linear algebra from a stabilizer oracle on the whole group."""
    flavor = GroupFlavor.parse(flavor)
    _check_pipeline_flavor(flavor)
    bv = _as_int(ctx, b)
    f = oracle if oracle is not None else make_stabilizer_oracle(flavor, ctx, FieldElement(ctx, bv))
    fB = restrict_oracle(f, borel(flavor, ctx))
    state = coset_state(flavor, ctx, fB)
    _, dist = column_conditional(state, _as_int(ctx, column))
    return Distribution(ctx, dist)


def row_vector(flavor, ctx: FieldCtx, b, column=1) -> np.ndarray:
    """The measured row as a length-q vector with a zero at 0."""
    flavor = GroupFlavor.parse(flavor)
    _check_pipeline_flavor(flavor)
    bv = _as_int(ctx, b)
    q = ctx.q
    v = np.zeros(q, dtype=complex)
    phases = np.exp(2j * np.pi * ctx.dot_table[bv] / ctx.p)
    if flavor is GroupFlavor.PGL:
        v[1:] = phases[1:] / math.sqrt(q - 1)
    else:
        branch = ctx.eta(_as_int(ctx, column))
        for j in range(1, q):
            v[j] = math.sqrt(2 / (q - 1)) * phases[j] * (1 + branch * ctx.eta(j)) / 2
    return v


def conditional_row_fourier_distribution(flavor, ctx: FieldCtx, b, column=1) -> Distribution:
    v = row_vector(flavor, ctx, b, column)
    amp = _row_transform(ctx) @ v
    return Distribution(ctx, np.abs(amp) ** 2)


def closed_form_distribution(flavor, ctx: FieldCtx, b, column=1) -> Distribution:
    """PGL: 1 - 1/q at b, 1/(q(q-1)) elsewhere.

    PSL/SL: |q [l = b] - 1 + s eta(b - l) G(eta, chi_1)|^2 / (2q(q-1)) with the
    branch sign s = eta(column).
    """
    flavor = GroupFlavor.parse(flavor)
    _check_pipeline_flavor(flavor)
    bv = _as_int(ctx, b)
    q = ctx.q
    probs = np.empty(q)
    if flavor is GroupFlavor.PGL:
        probs[:] = 1 / (q * (q - 1))
        probs[bv] = 1 - 1 / q
        return Distribution(ctx, probs)
    G = gauss_sum("eta", ctx.one).value
    s = ctx.eta(_as_int(ctx, column))
    for ell in range(q):
        diff = ctx.sub(bv, ell)
        val = (q if ell == bv else 0) - 1 + s * ctx.eta(diff) * G
        probs[ell] = abs(val) ** 2 / (2 * q * (q - 1))
    return Distribution(ctx, probs)


@dataclass(frozen=True)
class OffPeakForms:
    """Peak and off-peak probabilities for the PSL branch with a given denominator factor."""

    q: int
    d_parity: str
    denominator: int  # 2 or 4 in denominator * q * (q - 1)
    peak: Fraction
    offpeak: dict  # value -> multiplicity (floats for the even-d surds)
    total: float

    @property
    def normalizes(self) -> bool:
        return abs(self.total - 1) < TOL

    def to_json(self) -> dict:
        return {
            "denominator": f"{self.denominator}q(q-1)",
            "peak": float(self.peak),
            "offpeak": [[v, m] for v, m in sorted(self.offpeak.items())],
            "total": self.total,
            "normalizes": self.normalizes,
        }


def psl_offpeak_forms(ctx: FieldCtx, denominator: int = 2) -> OffPeakForms:
    """Closed-form PSL values with off-peak denominator ``denominator * q(q-1)``.

    With 2 the values sum to one; 4 halves every off-peak value.
    """
    q = ctx.q
    parity = gauss_sum("eta", ctx.one).d_parity
    den = denominator * q * (q - 1)
    peak = Fraction(q - 1, 2 * q)
    if parity == "odd":
        off = {(q + 1) / den: q - 1}
    else:
        rq = math.sqrt(q)
        off = {(q + 2 * rq + 1) / den: (q - 1) // 2, (q - 2 * rq + 1) / den: (q - 1) // 2}
    total = float(peak) + sum(v * m for v, m in off.items())
    return OffPeakForms(q, parity, denominator, peak, off, total)


# -- recovery ---------------------------------------------------------------------

@dataclass(frozen=True)
class RecoveryResult:
    recovered: object  # FieldElement or INF
    samples: int
    histogram: dict  # frequency int -> count
    confidence: float
    classical: bool
    queries: int
    character_shots: int = 0  # extra shots that ended in a one-dimensional irrep

    def to_json(self, ctx: FieldCtx) -> dict:
        rec = "inf" if self.recovered is INF else list(self.recovered.coeffs)
        return {
            "recovered": rec,
            "samples": self.samples,
            "histogram": [{"ell": list(ctx.coeffs(k)), "count": v} for k, v in sorted(self.histogram.items())],
            "confidence": self.confidence,
            "classical": self.classical,
            "queries": self.queries,
            "character_shots": self.character_shots,
        }


@functools.cache
def per_sample_shape(flavor, ctx: FieldCtx) -> np.ndarray:
    """Frequency probabilities per sample for hidden point 0; index = l - b.

    Samples are conditioned on weak measurement landing on a large irrep.  For
    the squares-only Borels the two column branches are equally likely.
    """
    flavor = GroupFlavor.parse(flavor)
    if flavor is GroupFlavor.PGL:
        cond = closed_form_distribution(flavor, ctx, 0).probs
    else:
        nonsq = ctx.generator
        cond = (closed_form_distribution(flavor, ctx, 0, 1).probs
                + closed_form_distribution(flavor, ctx, 0, nonsq).probs) / 2
    return cond


def default_sample_count(flavor, ctx: FieldCtx, failure: float = 1e-6) -> int:
    """Smallest m whose union-Chernoff bound on a wrong mode is below ``failure``.

    Per competitor the bound is (1 - (sqrt(p_peak) - sqrt(p_off))^2)^m.
    """
    shape = per_sample_shape(flavor, ctx)
    pp = shape[0]
    po = shape[1:].max()
    gap = (math.sqrt(pp) - math.sqrt(po)) ** 2
    m = math.log(failure / (ctx.q - 1)) / math.log(1 - gap)
    return max(1, math.ceil(m))


def _posterior_mode(ctx: FieldCtx, shape: np.ndarray, hist: Counter, mode: int) -> float:
    logs = np.log(np.maximum(shape, 1e-300))
    q = ctx.q
    scores = np.zeros(q)
    for cand in range(q):
        scores[cand] = sum(n * logs[ctx.sub(ell, cand)] for ell, n in hist.items())
    scores -= scores.max()
    post = np.exp(scores)
    post /= post.sum()
    return float(post[mode])


def recover_hidden_point(f: HidingOracle, flavor, ctx: FieldCtx, samples: int | None = None, seed: int = 0) -> RecoveryResult:
    """Identify the point s with f hiding G_s.

    s = infinity is settled classically.  Otherwise the coset state on B is
    built from the restricted oracle, the exact one-shot outcome table is
    computed, and shots are drawn by inverse CDF until ``samples`` frequencies
    are observed.  The modal frequency is read back as the field element (the
    stabilized point).
    """
    flavor = GroupFlavor.parse(flavor)
    _check_pipeline_flavor(flavor)
    if samples is None:
        samples = default_sample_count(flavor, ctx)
    if samples < 1:
        raise ValueError("samples must be positive")
    B = borel(flavor, ctx)
    before = f.queries
    if classical_equal_point_test(f, B):
        return RecoveryResult(INF, 0, {}, 1.0, True, f.queries - before)
    queries = f.queries - before
    fB = restrict_oracle(f, B)
    state = coset_state(flavor, ctx, fB)
    table = measurement_table(state)
    probs = np.array([o.p for o in table])
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    rng = np.random.default_rng(seed)
    hist: Counter = Counter()
    got = chars = 0
    # shots ending in a one-dimensional irrep carry no frequency and are repeated
    while got < samples:
        for i in np.searchsorted(cdf, rng.random(samples - got), side="right"):
            o = table[int(i)]
            if o.ell is None:
                chars += 1
            else:
                hist[o.ell] += 1
                got += 1
    if hist:
        top = max(hist.values())
        mode = min(k for k, v in hist.items() if v == top)
    else:
        mode = 0
    conf = _posterior_mode(ctx, per_sample_shape(flavor, ctx), hist, mode)
    return RecoveryResult(FieldElement(ctx, mode), samples, dict(hist), conf, False, queries, chars)
