"""AGL(d; 2) acting on F_2^d and the stabilizer structure inside GL(d; 2).

Vectors are bitmasks (bit i is coordinate i, so (0,...,0,1)^T is bit d-1).
Matrices are tuples of column bitmasks.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge
from .transitivity import ActionDescriptor, TransitivityReport, transitivity_fraction

MAX_D = 4

Matrix = tuple[int, ...]


def _check_d(d: int, lo: int = 1) -> None:
    if d < lo:
        raise ValueError(f"d must be at least {lo}")
    if d > MAX_D:
        raise DimensionTooLarge(f"d = {d} exceeds {MAX_D}")


def apply(A: Matrix, v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= A[i]
        v >>= 1
        i += 1
    return out


def matmul(A: Matrix, C: Matrix) -> Matrix:
    return tuple(apply(A, c) for c in C)


def transpose(A: Matrix) -> Matrix:
    d = len(A)
    return tuple(sum(((A[j] >> i) & 1) << j for j in range(d)) for i in range(d))


def rank(cols: Matrix) -> int:
    basis: list[int] = []
    for c in cols:
        for b in basis:
            c = min(c, c ^ b)
        if c:
            basis.append(c)
    return len(basis)


def identity(d: int) -> Matrix:
    return tuple(1 << i for i in range(d))


def inverse(A: Matrix) -> Matrix:
    d = len(A)
    # solve A X = I column by column via the inverse permutation of v -> Av
    table = {apply(A, v): v for v in range(1 << d)}
    return tuple(table[1 << i] for i in range(d))


@functools.cache
def enumerate_gl2(d: int) -> tuple[Matrix, ...]:
    """GL(d; 2), built column by column outside the span of the previous columns."""
    _check_d(d)
    out = []

    def extend(cols: list[int], span: set[int]):
        if len(cols) == d:
            out.append(tuple(cols))
            return
        for c in range(1, 1 << d):
            if c not in span:
                extend(cols + [c], span | {s ^ c for s in span})

    extend([], {0})
    return tuple(sorted(out))


def gl2_order(d: int) -> int:
    return math.prod((1 << d) - (1 << i) for i in range(d))


def agl2_order(d: int) -> int:
    return (1 << d) * gl2_order(d)


@dataclass(frozen=True)
class AffineMap2:
    """v -> A v + B, block form (A B / 0 1)."""

    A: Matrix
    B: int

    @property
    def d(self) -> int:
        return len(self.A)

    def __call__(self, v: int) -> int:
        return apply(self.A, v) ^ self.B

    def __mul__(self, other: "AffineMap2") -> "AffineMap2":
        return AffineMap2(matmul(self.A, other.A), apply(self.A, other.B) ^ self.B)

    def inverse(self) -> "AffineMap2":
        Ai = inverse(self.A)
        return AffineMap2(Ai, apply(Ai, self.B))

    def block(self) -> Matrix:
        """The (d+1) x (d+1) block matrix as columns."""
        d = self.d
        return tuple(self.A) + (self.B | (1 << d),)


def enumerate_agl2(d: int) -> list[AffineMap2]:
    _check_d(d)
    return [AffineMap2(A, B) for A in enumerate_gl2(d) for B in range(1 << d)]


@functools.cache
def _gl_perms(d: int) -> np.ndarray:
    return np.array([[apply(A, v) for v in range(1 << d)] for A in enumerate_gl2(d)], dtype=np.int64)


def agl2_action(d: int) -> ActionDescriptor:
    """Permutation table of AGL(d; 2) on F_2^d, rows ordered as :func:`enumerate_agl2`."""
    _check_d(d)
    gl = _gl_perms(d)
    shifts = np.arange(1 << d)
    perms = (gl[:, None, :] ^ shifts[None, :, None]).reshape(-1, 1 << d)
    return ActionDescriptor(perms, list(range(1 << d)))


def check_3transitive(d: int, k: int = 3) -> TransitivityReport:
    return transitivity_fraction(agl2_action(d), k)


@dataclass(frozen=True)
class StabilizerStructure:
    d: int
    order: int
    expected_order: int  # |AGL(d-1; 2)|
    last_column_fixed: bool
    leading_block_invertible: bool
    last_row_free: bool  # every leading block occurs with every last row
    bijective: bool
    homomorphism: bool
    pairs_checked: int

    @property
    def ok(self) -> bool:
        return (self.order == self.expected_order and self.last_column_fixed
                and self.leading_block_invertible and self.last_row_free
                and self.bijective and self.homomorphism)

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["ok"] = self.ok
        return out


def point_stabilizer(d: int, point: int) -> list[Matrix]:
    return [A for A in enumerate_gl2(d) if apply(A, point) == point]


def to_affine(A: Matrix) -> AffineMap2:
    """Witness map from the stabilizer of e_d to AGL(d-1; 2).

    A has the shape (M 0 / r 1).  Its inverse transpose has the shape
    (N v / 0 1), read as the affine map u -> N u + v.  Inverse transpose keeps
    the order of products, so this is a homomorphism.
    """
    d = len(A)
    T = transpose(inverse(A))
    low = (1 << (d - 1)) - 1
    if any(c >> (d - 1) for c in T[:-1]) or not (T[-1] >> (d - 1)) & 1:
        raise ValueError("matrix does not fix the last basis vector")
    return AffineMap2(tuple(c & low for c in T[:-1]), T[-1] & low)


def point1_stabilizer_structure(d: int, max_pairs: int | None = None, seed: int = 0) -> StabilizerStructure:
    """Stabilizer of (0,...,0,1)^T in GL(d; 2) against AGL(d-1; 2).

    The homomorphism check covers every pair unless ``max_pairs`` caps it with
    a seeded random sample.
    """
    _check_d(d, lo=2)
    e = 1 << (d - 1)
    low = e - 1
    stab = point_stabilizer(d, e)
    last_col = all(A[-1] == e for A in stab)
    leads = [tuple(c & low for c in A[:-1]) for A in stab]
    lead_inv = all(rank(M) == d - 1 for M in leads)
    rows = {}
    for A, M in zip(stab, leads):
        r = sum(((A[i] >> (d - 1)) & 1) << i for i in range(d - 1))
        rows.setdefault(M, set()).add(r)
    free = all(len(v) == 1 << (d - 1) for v in rows.values())

    phi = {A: to_affine(A) for A in stab}
    images = set(phi.values())
    target = set(enumerate_agl2(d - 1))
    bijective = len(images) == len(stab) and images == target

    if max_pairs is None or max_pairs >= len(stab) ** 2:
        pairs = [(A, C) for A in stab for C in stab]
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, len(stab), size=(max_pairs, 2))
        pairs = [(stab[i], stab[j]) for i, j in idx]
    hom = all(phi[matmul(A, C)] == phi[A] * phi[C] for A, C in pairs)
    return StabilizerStructure(d, len(stab), agl2_order(d - 1), last_col, lead_inv, free,
                               bijective, hom, len(pairs))


def translation_conjugates_stabilizer(d: int, P: int) -> bool:
    """(1, P) GL(d; 2) (1, P)^{-1} equals the stabilizer of P in AGL(d; 2)."""
    _check_d(d)
    t = AffineMap2(identity(d), P)
    ti = t.inverse()
    conj = {t * AffineMap2(A, 0) * ti for A in enumerate_gl2(d)}
    stab = {g for g in enumerate_agl2(d) if g(P) == P}
    return conj == stab


def gl_orbits(d: int) -> list[int]:
    """Orbit sizes of GL(d; 2) on F_2^d."""
    perms = _gl_perms(d)
    seen: set[int] = set()
    sizes = []
    for v in range(1 << d):
        if v in seen:
            continue
        orb = set(perms[:, v].tolist())
        seen |= orb
        sizes.append(len(orb))
    return sizes
