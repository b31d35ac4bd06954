"""k-transitivity, the "almost k-transitive" fraction, and stabilizer index checks.

Actions are held as a permutation table: row g lists the image of every
point under g.  Rows are indexed by group element, so non-faithful actions
(SL(2; q) on the projective line) keep their multiplicities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceeded, NotKTransitive

TUPLE_BUDGET = 5 * 10**9


@dataclass
class ActionDescriptor:
    perms: np.ndarray  # (|G|, s) integer table of point images
    points: list = field(default_factory=list)
    elements: list | None = None

    def __post_init__(self):
        self.perms = np.asarray(self.perms, dtype=np.int64)
        if not self.points:
            self.points = list(range(self.perms.shape[1]))

    @property
    def order(self) -> int:
        return self.perms.shape[0]

    @property
    def s(self) -> int:
        return self.perms.shape[1]

    @classmethod
    def from_elements(cls, elements: Sequence, points: Sequence, act_index: Callable[[object, int], int]):
        perms = np.array([[act_index(g, i) for i in range(len(points))] for g in elements], dtype=np.int64)
        return cls(perms, list(points), list(elements))

    def index_of(self, point) -> int:
        return self.points.index(point)

    def is_homomorphism(self, mul: Callable | None = None) -> bool:
        """Check phi(gh) = phi(g) o phi(h) over all pairs (needs ``elements``)."""
        if self.elements is None:
            raise ValueError("element list required")
        mul = mul or (lambda g, h: g * h)
        pos = {g: i for i, g in enumerate(self.elements)}
        for i, g in enumerate(self.elements):
            for j, h in enumerate(self.elements):
                gh = pos[mul(g, h)]
                if not np.array_equal(self.perms[gh], self.perms[i][self.perms[j]]):
                    return False
        return True


def projective_action(flavor, ctx) -> ActionDescriptor:
    """Fractional linear action of a 2x2 matrix group on the projective line."""
    from .pgroup import act_index, enumerate_group, projective_line

    return ActionDescriptor.from_elements(enumerate_group(flavor, ctx), projective_line(ctx), act_index)


@dataclass(frozen=True)
class Orbit:
    representative: tuple[int, ...]
    size: int
    min_hits: int  # how many group elements send the representative to a given image
    max_hits: int


@dataclass(frozen=True)
class TransitivityReport:
    k: int
    s: int
    total_tuples: int
    b: Fraction  # minimum over source tuples of the fraction reached
    fraction_reached: Fraction  # maximum over source tuples
    is_k_transitive: bool
    orbits: tuple[Orbit, ...]
    witness: tuple | None = None  # (source, unreachable target) when not k-transitive

    @property
    def constant_fraction(self) -> bool:
        return self.b == self.fraction_reached

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "total_tuples": self.total_tuples,
            "b": f"{self.b.numerator}/{self.b.denominator}",
            "fraction_reached": f"{self.fraction_reached.numerator}/{self.fraction_reached.denominator}",
            "is_k_transitive": self.is_k_transitive,
            "constant_fraction": self.constant_fraction,
            "orbit_sizes": [o.size for o in self.orbits],
            "hits_per_tuple": sorted({(o.min_hits, o.max_hits) for o in self.orbits}),
            "witness": None if self.witness is None else [list(t) for t in self.witness],
        }


def _encode(tuples: np.ndarray, s: int) -> np.ndarray:
    code = np.zeros(tuples.shape[0], dtype=np.int64)
    for c in range(tuples.shape[1]):
        code = code * s + tuples[:, c]
    return code


def _decode(code: int, s: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        code, r = divmod(code, s)
        out.append(r)
    return tuple(reversed(out))


def reachable(action: ActionDescriptor, source: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Images of a point tuple, with the number of group elements hitting each."""
    imgs = action.perms[:, list(source)]
    codes, counts = np.unique(_encode(imgs, action.s), return_counts=True)
    k = len(source)
    return {_decode(int(c), action.s, k): int(n) for c, n in zip(codes, counts)}


def transitivity_fraction(action: ActionDescriptor, k: int) -> TransitivityReport:
    """Orbit decomposition of ordered k-tuples of distinct points.

    Every source tuple reaches exactly its own orbit, so the per-source fraction
    is (orbit size) / (number of tuples); each orbit is expanded once.
    """
    s = action.s
    if not 1 <= k <= s:
        raise ValueError(f"k must lie in [1, {s}]")
    total = math.perm(s, k)
    if total * action.order > TUPLE_BUDGET:
        raise BudgetExceeded(f"{total} tuples x {action.order} elements exceeds budget")
    visited = np.zeros(s**k, dtype=bool)
    orbits = []
    for src in itertools.permutations(range(s), k):
        code = 0
        for x in src:
            code = code * s + x
        if visited[code]:
            continue
        imgs = action.perms[:, list(src)]
        codes, counts = np.unique(_encode(imgs, s), return_counts=True)
        visited[codes] = True
        orbits.append(Orbit(src, len(codes), int(counts.min()), int(counts.max())))
    sizes = [o.size for o in orbits]
    b = Fraction(min(sizes), total)
    top = Fraction(max(sizes), total)
    witness = None
    if len(orbits) > 1:
        witness = (orbits[0].representative, orbits[1].representative)
    return TransitivityReport(k, s, total, b, top, len(orbits) == 1, tuple(orbits), witness)


def stabilizer_rows(action: ActionDescriptor, points: Sequence[int]) -> np.ndarray:
    """Row indices of the elements fixing every point in ``points``."""
    pts = list(points)
    if not pts:
        return np.arange(action.order)
    mask = np.all(action.perms[:, pts] == np.array(pts), axis=1)
    return np.nonzero(mask)[0]


@dataclass(frozen=True)
class IndexReport:
    j: int
    group_order: int
    stabilizer_order: int
    index: int
    expected_index: int
    holds: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def verify_index_formula(action: ActionDescriptor, S: Sequence[int], k: int) -> IndexReport:
    """Check |G| / |G_S| = s!/(s-j)! for a k-transitive action, j = |S| <= k."""
    j = len(S)
    if len(set(S)) != j:
        raise ValueError("points of S must be distinct")
    if j > k:
        raise ValueError("|S| must not exceed k")
    stab = len(stabilizer_rows(action, S))
    index, rem = divmod(action.order, stab)
    assert rem == 0, "stabilizer order must divide the group order"
    if not transitivity_fraction(action, k).is_k_transitive:
        raise NotKTransitive(f"action is not {k}-transitive; measured index {index}", index, stab)
    expected = math.perm(action.s, j)
    return IndexReport(j, action.order, stab, index, expected, index == expected)


@dataclass(frozen=True)
class DistinctnessReport:
    precondition_met: bool
    distinct: bool | None
    b: Fraction
    witness: tuple | None = None

    def __bool__(self):
        return bool(self.precondition_met and self.distinct)


def verify_distinctness(action: ActionDescriptor, alpha: int) -> DistinctnessReport:
    """Two-point stabilizers G_{alpha,beta} are pairwise distinct as element sets.

    Only asserted when the action is 2-transitive and reaches at least a
    fraction 1/(s-2) of ordered triples.
    """
    s = action.s
    if s < 3:
        return DistinctnessReport(False, None, Fraction(0))
    rep3 = transitivity_fraction(action, 3)
    ok = transitivity_fraction(action, 2).is_k_transitive and rep3.b >= Fraction(1, s - 2)
    if not ok:
        return DistinctnessReport(False, None, rep3.b)
    stabs = {}
    for beta in range(s):
        if beta == alpha:
            continue
        key = frozenset(stabilizer_rows(action, [alpha, beta]).tolist())
        if key in stabs:
            return DistinctnessReport(True, False, rep3.b, (stabs[key], beta))
        stabs[key] = beta
    return DistinctnessReport(True, True, rep3.b)
