"""Representations of the affine group AGL(1; q) = F_q x| F_q^*.

Affine elements are maps x -> a x + b, composed right-to-left:
(a, b) * (c, d) = (ac, b + a d).  Matrices for the (q-1)-dimensional irrep
are indexed by F_q^* in generator-power order g^0, g^1, ..., g^{q-2}, which
makes the squares the even positions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import MixedContexts, NotSquareGenerator
from .ff import FieldCtx, FieldElement, GaussSumValue, gauss_sum  # noqa: F401  (re-exported)


@dataclass(frozen=True, slots=True)
class AffineElement:
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.ctx is not self.b.ctx and self.a.ctx != self.b.ctx:
            raise MixedContexts("multiplier and translation over different fields")
        if not self.a:
            raise ValueError("affine multiplier must be nonzero")

    @property
    def ctx(self) -> FieldCtx:
        return self.a.ctx

    @classmethod
    def of(cls, ctx: FieldCtx, a: int, b: int) -> "AffineElement":
        return cls(FieldElement(ctx, a), FieldElement(ctx, b))

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        return AffineElement(self.a * other.a, self.b + self.a * other.b)

    def inverse(self) -> "AffineElement":
        ai = self.a.inverse()
        return AffineElement(ai, -(ai * self.b))

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.a * x + self.b

    @property
    def key(self) -> tuple[int, int]:
        return (self.a.value, self.b.value)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"Aff({self.a.value}, {self.b.value})"


def compose(g: AffineElement, h: AffineElement) -> AffineElement:
    return g * h


def affine_group(ctx: FieldCtx, multipliers: Iterable[int] | None = None) -> list[AffineElement]:
    """All (a, b) with a drawn from ``multipliers`` (default: all of F_q^*)."""
    ms = range(1, ctx.q) if multipliers is None else sorted(multipliers)
    return [AffineElement.of(ctx, a, b) for a in ms for b in range(ctx.q)]


def squares(ctx: FieldCtx) -> list[int]:
    return [ctx.exp[t] for t in range(0, ctx.q - 1, 2)]


def row_order(ctx: FieldCtx) -> list[int]:
    """F_q^* in generator-power order, the index order of every RepMatrix."""
    return list(ctx.exp)


def _omega(ctx: FieldCtx) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(ctx.p) / ctx.p)


def rho(g: AffineElement) -> np.ndarray:
    """The (q-1)-dimensional irrep: entry (j, k) = w_p^{b.j} if k = a j, else 0."""
    ctx = g.ctx
    q = ctx.q
    exp, log = ctx.exp, ctx.log
    w = _omega(ctx)
    out = np.zeros((q - 1, q - 1), dtype=complex)
    a, b = g.a.value, g.b.value
    for r in range(q - 1):
        j = exp[r]
        k = ctx.mul(a, j)
        out[r, log[k]] = w[ctx.dot(b, j)]
    return out


@dataclass(frozen=True)
class LinearCharacter:
    """chi_t((a, b)) = exp(2 pi i t log_g(a) / (q-1)); ignores b."""

    ctx: FieldCtx
    t: int

    def __call__(self, g: AffineElement) -> complex:
        return cmath.exp(2j * math.pi * self.t * self.ctx.log[g.a.value] / (self.ctx.q - 1))


def characters(ctx: FieldCtx) -> list[LinearCharacter]:
    return [LinearCharacter(ctx, t) for t in range(ctx.q - 1)]


def sign_character(ctx: FieldCtx) -> LinearCharacter:
    """The character that is -1 on non-square multipliers."""
    return LinearCharacter(ctx, (ctx.q - 1) // 2)


def conjugacy_classes(ctx: FieldCtx) -> list[frozenset[AffineElement]]:
    """Brute-force conjugacy classes, ordered by (size, smallest member)."""
    group = affine_group(ctx)
    seen: set[AffineElement] = set()
    classes = []
    for x in group:
        if x in seen:
            continue
        cls = frozenset(h * x * h.inverse() for h in group)
        seen |= cls
        classes.append(cls)
    return sorted(classes, key=lambda c: (len(c), min(c).key))


def rho_character(g: AffineElement) -> complex:
    """Trace of rho(g) from the class structure (no matrix built)."""
    ctx = g.ctx
    if g.a.value != 1:
        return 0j
    return complex(ctx.q - 1) if g.b.value == 0 else -1 + 0j


def average(rep: Callable[[AffineElement], np.ndarray], elements: Sequence[AffineElement]) -> np.ndarray:
    """(1/|H|) sum_h rep(h)."""
    return sum(rep(h) for h in elements) / len(elements)


def translate_subgroup(ctx: FieldCtx, b: int, multipliers: Iterable[int]) -> list[AffineElement]:
    """H^b = (1, b) H (1, -b) for H = {(a, 0)}: the maps fixing b, i.e. (a, (1 - a) b)."""
    return [AffineElement.of(ctx, a, ctx.mul(ctx.sub(1, a), b)) for a in multipliers]


def hb_projector_formula(ctx: FieldCtx, b: int) -> np.ndarray:
    """Entry (j, k) = w_p^{b.(j - k)} / (q - 1)."""
    q = ctx.q
    w = _omega(ctx)
    rows = row_order(ctx)
    phase = np.array([w[ctx.dot(b, j)] for j in rows])
    return np.outer(phase, phase.conj()) / (q - 1)


def psl_row_structure(a: FieldElement, b: FieldElement) -> np.ndarray:
    """Closed-form mixed-state image for the squares-only stabilizer of b.

    Entry (j, k) = sqrt(2)/(q-1) * w_p^{b.(j-k)} * (1 + eta(jk))/2.  ``a`` must
    generate the squares of F_q^*.
    """
    ctx = a.ctx
    q = ctx.q
    av = a.value
    if av == 0 or not ctx.is_square(av) or math.gcd(ctx.log[av] // 2, (q - 1) // 2) != 1:
        raise NotSquareGenerator(f"{a} does not generate the squares of F_{q}^*")
    w = _omega(ctx)
    rows = row_order(ctx)
    out = np.zeros((q - 1, q - 1), dtype=complex)
    for r, j in enumerate(rows):
        for c, k in enumerate(rows):
            e = ctx.eta(ctx.mul(j, k))
            if e == 1:
                out[r, c] = w[ctx.dot(b.value, ctx.sub(j, k))]
    return out * math.sqrt(2) / (q - 1)


def squares_stabilizer(a: FieldElement, b: FieldElement) -> list[AffineElement]:
    """H_a^b = {(a^t, (1 - a^t) b)}: the square-multiplier maps fixing b."""
    ctx = a.ctx
    powers = sorted({ctx.pow(a.value, t) for t in range((ctx.q - 1) // 2)})
    return translate_subgroup(ctx, b.value, powers)


# -- verification helpers ------------------------------------------------------

@dataclass(frozen=True)
class RepCheck:
    q: int
    homomorphism_residual: float
    unitarity_residual: float
    identity_residual: float
    character_norm: float  # sum |tr rho(g)|^2 / |B|, 1 for an irrep
    pairs_checked: int

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "homomorphism_residual": self.homomorphism_residual,
            "unitarity_residual": self.unitarity_residual,
            "identity_residual": self.identity_residual,
            "character_norm": self.character_norm,
            "pairs_checked": self.pairs_checked,
        }


def check_rho(ctx: FieldCtx, pairs: int | None = None, seed: int = 0) -> RepCheck:
    """Residuals for homomorphism, unitarity and irreducibility of rho.

    ``pairs=None`` checks every pair of group elements.
    """
    group = affine_group(ctx)
    mats = {g.key: rho(g) for g in group}
    eye = np.eye(ctx.q - 1)
    if pairs is None:
        todo = [(g, h) for g in group for h in group]
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, len(group), size=(pairs, 2))
        todo = [(group[i], group[j]) for i, j in idx]
    hom = max(np.abs(mats[g.key] @ mats[h.key] - mats[(g * h).key]).max() for g, h in todo)
    uni = max(np.abs(m @ m.conj().T - eye).max() for m in mats.values())
    ident = np.abs(mats[(1, 0)] - eye).max()
    norm = sum(abs(np.trace(m)) ** 2 for m in mats.values()) / len(group)
    return RepCheck(ctx.q, float(hom), float(uni), float(ident), float(norm), len(todo))


def serialize(mat: np.ndarray) -> list[list[float]]:
    """Row-major list of [re, im] pairs."""
    return [[float(z.real), float(z.imag)] for z in np.asarray(mat).ravel()]
