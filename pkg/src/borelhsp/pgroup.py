"""GL/SL/PGL/PSL(2; q), the projective line and the Borel subgroup.

Group elements keep their four entries as integer field indices (see
:mod:`borelhsp.ff`) in canonical form for their flavor, so equality and
hashing are plain tuple comparisons.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .affine_rep import AffineElement
from .errors import (
    DuplicatePoints,
    EvenCharacteristic,
    FlavorMismatch,
    GroupTooLarge,
    MixedContexts,
    NotInGroup,
    NotUpperTriangular,
)
from .ff import FieldCtx, FieldElement

ENUMERATION_BUDGET = 10**6


class GroupFlavor(str, enum.Enum):
    GL = "GL"
    SL = "SL"
    PGL = "PGL"
    PSL = "PSL"

    @classmethod
    def parse(cls, s: "str | GroupFlavor") -> "GroupFlavor":
        if isinstance(s, GroupFlavor):
            return s
        return cls(s.upper())

    @property
    def projective(self) -> bool:
        return self in (GroupFlavor.PGL, GroupFlavor.PSL)

    @property
    def special(self) -> bool:
        return self in (GroupFlavor.SL, GroupFlavor.PSL)


def _require_odd(flavor: GroupFlavor, ctx: FieldCtx) -> None:
    if flavor is not GroupFlavor.GL and ctx.p == 2:
        raise EvenCharacteristic(f"{flavor.value}(2;{ctx.q}) needs odd q")


def group_order(flavor, ctx: FieldCtx) -> int:
    flavor = GroupFlavor.parse(flavor)
    _require_odd(flavor, ctx)
    q = ctx.q
    if flavor is GroupFlavor.GL:
        return (q * q - 1) * (q * q - q)
    if flavor is GroupFlavor.PSL:
        return (q + 1) * q * (q - 1) // 2
    return (q + 1) * q * (q - 1)


# -- elements -----------------------------------------------------------------

def _canonical(flavor: GroupFlavor, ctx: FieldCtx, m: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    a, b, c, d = m
    det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    if det == 0:
        raise NotInGroup("singular matrix")
    if flavor.special and det != 1:
        raise NotInGroup(f"{flavor.value} needs determinant 1")
    if flavor is GroupFlavor.PGL:
        lead = next(x for x in m if x)
        s = ctx.inv(lead)
        return tuple(ctx.mul(s, x) for x in m)
    if flavor is GroupFlavor.PSL:
        neg = tuple(ctx.neg(x) for x in m)
        return min(m, neg)
    return m


@dataclass(frozen=True)
class GroupElement:
    """A 2x2 matrix (alpha beta / gamma delta) in canonical form for its flavor."""

    m: tuple[int, int, int, int]
    flavor: GroupFlavor
    ctx: FieldCtx = field(compare=False, repr=False)

    @classmethod
    def make(cls, flavor, ctx: FieldCtx, entries: Sequence) -> "GroupElement":
        flavor = GroupFlavor.parse(flavor)
        _require_odd(flavor, ctx)
        m = tuple(int(ctx.element(x).value) for x in entries)
        return cls(_canonical(flavor, ctx, m), flavor, ctx)

    @property
    def entries(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return tuple(FieldElement(self.ctx, x) for x in self.m)

    @property
    def det(self) -> FieldElement:
        a, b, c, d = self.m
        ctx = self.ctx
        return FieldElement(ctx, ctx.sub(ctx.mul(a, d), ctx.mul(b, c)))

    def _check(self, other: "GroupElement") -> None:
        if self.flavor is not other.flavor:
            raise FlavorMismatch(f"{self.flavor.value} vs {other.flavor.value}")
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise MixedContexts("elements over different fields")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        ctx = self.ctx
        a, b, c, d = self.m
        e, f, g, h = other.m
        add, mul = ctx.add, ctx.mul
        prod = (add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h)),
                add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h)))
        return GroupElement(_canonical(self.flavor, ctx, prod), self.flavor, ctx)

    def inverse(self) -> "GroupElement":
        ctx = self.ctx
        a, b, c, d = self.m
        s = ctx.inv(ctx.sub(ctx.mul(a, d), ctx.mul(b, c)))
        inv = (ctx.mul(s, d), ctx.mul(s, ctx.neg(b)), ctx.mul(s, ctx.neg(c)), ctx.mul(s, a))
        return GroupElement(_canonical(self.flavor, ctx, inv), self.flavor, ctx)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.m < other.m

    def __repr__(self):
        a, b, c, d = self.m
        return f"{self.flavor.value}[{a} {b} / {c} {d}]"

    def to_json(self) -> dict:
        return {"flavor": self.flavor.value, "entries": [list(self.ctx.coeffs(x)) for x in self.m]}


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def conjugate(g: GroupElement, h: GroupElement) -> GroupElement:
    """h g h^{-1}."""
    return h * g * h.inverse()


def identity(flavor, ctx: FieldCtx) -> GroupElement:
    return GroupElement.make(flavor, ctx, (1, 0, 0, 1))


def weyl(flavor, ctx: FieldCtx) -> GroupElement:
    """w = (0 -1 / 1 0)."""
    return GroupElement.make(flavor, ctx, (0, ctx.neg(1), 1, 0))


# -- the projective line --------------------------------------------------------

class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ProjPoint = Union[FieldElement, _Infinity]


def point_index(x) -> int:
    """Position of a point in the fixed order: infinity first, then field elements."""
    return 0 if x is INF else x.value + 1


def point_from_index(ctx: FieldCtx, i: int):
    return INF if i == 0 else FieldElement(ctx, i - 1)


def projective_line(ctx: FieldCtx) -> list:
    return [INF] + ctx.elements()


def point_label(x) -> str:
    return "inf" if x is INF else str(list(x.coeffs)) if x.ctx.n > 1 else str(x.value)


def act_index(g: GroupElement, i: int) -> int:
    """Fractional linear action on point indices."""
    ctx = g.ctx
    a, b, c, d = g.m
    if i == 0:
        return 0 if c == 0 else ctx.mul(a, ctx.inv(c)) + 1
    x = i - 1
    den = ctx.add(ctx.mul(c, x), d)
    if den == 0:
        return 0
    num = ctx.add(ctx.mul(a, x), b)
    return ctx.mul(num, ctx.inv(den)) + 1


def act(g: GroupElement, x):
    if x is not INF and x.ctx != g.ctx:
        raise MixedContexts("point and group element over different fields")
    return point_from_index(g.ctx, act_index(g, point_index(x)))


# -- enumeration and subgroups ------------------------------------------------

@functools.cache
def _enumerate(flavor: GroupFlavor, ctx: FieldCtx) -> tuple[GroupElement, ...]:
    q = ctx.q
    mul, sub = ctx.mul, ctx.sub
    seen = set()
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    det = sub(mul(a, d), mul(b, c))
                    if det == 0 or (flavor.special and det != 1):
                        continue
                    m = (a, b, c, d)
                    if flavor.projective:
                        m = _canonical(flavor, ctx, m)
                    seen.add(m)
    return tuple(GroupElement(m, flavor, ctx) for m in sorted(seen))


def enumerate_group(flavor, ctx: FieldCtx) -> list[GroupElement]:
    """All canonical elements in lexicographic order of their entries."""
    flavor = GroupFlavor.parse(flavor)
    _require_odd(flavor, ctx)
    if group_order(flavor, ctx) > ENUMERATION_BUDGET:
        raise GroupTooLarge(f"|{flavor.value}(2;{ctx.q})| exceeds {ENUMERATION_BUDGET}")
    return list(_enumerate(flavor, ctx))


@dataclass(frozen=True)
class SubgroupDesc:
    kind: str  # "stabilizer", "borel" or "explicit"
    flavor: GroupFlavor
    ctx: FieldCtx = field(repr=False)
    elements: tuple[GroupElement, ...] = field(repr=False)
    points: tuple = ()

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.element_set

    @functools.cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @classmethod
    def explicit(cls, flavor, ctx: FieldCtx, elements: Iterable[GroupElement]) -> "SubgroupDesc":
        """Wrap an element list after checking closure under products and inverses."""
        flavor = GroupFlavor.parse(flavor)
        els = tuple(sorted(set(elements)))
        s = set(els)
        for g in els:
            if g.inverse() not in s:
                raise NotInGroup(f"{g} has no inverse in the list")
            for h in els:
                if g * h not in s:
                    raise NotInGroup(f"{g}*{h} leaves the list")
        return cls("explicit", flavor, ctx, els)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "flavor": self.flavor.value,
            "points": [point_label(x) for x in self.points],
            "elements": [g.to_json() for g in self.elements],
        }


def stabilizer(flavor, ctx: FieldCtx, points: Sequence) -> SubgroupDesc:
    """Pointwise stabilizer of up to three distinct points of the projective line."""
    flavor = GroupFlavor.parse(flavor)
    idx = [point_index(x) for x in points]
    if len(set(idx)) != len(idx):
        raise DuplicatePoints("stabilizer points must be distinct")
    if len(idx) > 3:
        raise ValueError("at most three points")
    els = tuple(g for g in enumerate_group(flavor, ctx) if all(act_index(g, i) == i for i in idx))
    kind = "borel" if idx == [0] else "stabilizer"
    return SubgroupDesc(kind, flavor, ctx, els, tuple(points))


def borel(flavor, ctx: FieldCtx) -> SubgroupDesc:
    return stabilizer(flavor, ctx, [INF])


def borel_generators(flavor, ctx: FieldCtx) -> list[GroupElement]:
    """A multiplier generator and the unit translation of B."""
    flavor = GroupFlavor.parse(flavor)
    g = ctx.generator
    if flavor.special:
        diag = (g, 0, 0, ctx.inv(g))
    else:
        diag = (g, 0, 0, 1)
    return [GroupElement.make(flavor, ctx, diag), GroupElement.make(flavor, ctx, (1, 1, 0, 1))]


@dataclass(frozen=True)
class BorelCoords:
    """Affine coordinates of a Borel element.

    ``affine`` is the map x -> a x + b that the element induces on the finite
    part of the projective line.  For SL the raw diagonal entry ``alpha`` is
    kept as well, since a = alpha^2 forgets its sign.
    """

    affine: AffineElement
    flavor: GroupFlavor
    alpha: FieldElement | None = None


def borel_decompose(g: GroupElement) -> BorelCoords:
    ctx = g.ctx
    a, b, c, d = g.m
    if c != 0:
        raise NotUpperTriangular(f"{g} is not upper triangular")
    dinv = ctx.inv(d)
    # (a b / 0 d) acts as x -> (a/d) x + b/d in every flavor
    aff = AffineElement(FieldElement(ctx, ctx.mul(a, dinv)), FieldElement(ctx, ctx.mul(b, dinv)))
    alpha = FieldElement(ctx, a) if g.flavor is GroupFlavor.SL else None
    return BorelCoords(aff, g.flavor, alpha)


def borel_element(flavor, ctx: FieldCtx, a: int, b: int, alpha: int | None = None) -> GroupElement:
    """Inverse of :func:`borel_decompose` on integer coordinates.

    For SL/PSL ``a`` must be a square; ``alpha`` picks the square root (SL only).
    """
    flavor = GroupFlavor.parse(flavor)
    if not flavor.special:
        return GroupElement.make(flavor, ctx, (a, b, 0, 1))
    if alpha is None:
        if not ctx.is_square(a):
            raise NotInGroup(f"multiplier {a} is not a square")
        alpha = ctx.exp[ctx.log[a] // 2]
    elif ctx.mul(alpha, alpha) != a:
        raise NotInGroup("alpha^2 != a")
    ai = ctx.inv(alpha)
    return GroupElement.make(flavor, ctx, (alpha, ctx.mul(ai, b), 0, ai))


def dumps_elements(elements: Iterable[GroupElement]) -> str:
    return json.dumps([g.to_json() for g in elements], sort_keys=True)


__all__ = [
    "GroupFlavor", "GroupElement", "ProjPoint", "SubgroupDesc", "BorelCoords", "INF",
    "group_order", "mul", "inv", "conjugate", "identity", "weyl", "act", "act_index",
    "point_index", "point_from_index", "projective_line", "enumerate_group",
    "stabilizer", "borel", "borel_generators", "borel_decompose", "borel_element",
]
