"""Arithmetic in F_{p^n}.

Elements are stored as integers ``0 <= v < q`` encoding the coefficient
vector ``(c_0, ..., c_{n-1})`` in base p, ``v = sum c_k p^k``.  Integer order
on ``v`` is therefore the lexicographic order of coefficient vectors read
from the highest degree down, which is the order used everywhere for
"smallest" choices (modulus, generator, canonical forms).

Multiplication goes through discrete exp/log tables built from the
generator; addition is digitwise mod p.  The integer-level methods on
:class:`FieldCtx` are what the group and representation modules use; the
:class:`FieldElement` wrapper is the public, operator-overloaded face.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import DegreeZero, DivisionByZero, FieldTooLarge, MixedContexts, NotPrime

MAX_ORDER = 2**20

Frequency = tuple  # coefficient vector (l_0, ..., l_{n-1}) over Z_p


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    r = math.isqrt(m)
    return all(m % f for f in range(3, r + 1, 2))


def prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


# -- polynomials over Z_p as low-degree-first coefficient lists ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for k in range(dm + 1):
                a[i - dm + k] = (a[i - dm + k] - c * m[k]) % p
    return _poly_trim([x % p for x in a[:dm]] if len(a) >= dm else [x % p for x in a])


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    for low in range(p**deg):
        yield _digits(low, p, deg) + [1]


def _digits(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, r = divmod(v, p)
        out.append(r)
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


# -- the field ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The field F_{p^n} with a fixed modulus and multiplicative generator.

    Build instances with :func:`make_field`; that function is cached so equal
    ``(p, n)`` give the identical object.
    """

    p: int
    n: int
    modulus: tuple[int, ...]  # low-degree-first, monic, length n+1
    generator: int
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.n)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FieldCtx({self.p}^{self.n})"

    @property
    def label(self) -> str:
        return f"{self.p}^{self.n}"

    # conversions
    def coeffs(self, v: int) -> tuple[int, ...]:
        return tuple(_digits(v, self.p, self.n))

    def from_coeffs(self, c: Sequence[int]) -> int:
        if len(c) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(c)}")
        v = 0
        for x in reversed(c):
            if not 0 <= x < self.p:
                raise ValueError(f"coefficient {x} outside [0, {self.p})")
            v = v * self.p + x
        return v

    # tables
    @functools.cached_property
    def _exp_log(self) -> tuple[list[int], list[int]]:
        q, p, m = self.q, self.p, self.modulus
        exp = [0] * (q - 1)
        log = [-1] * q
        if self.n == 1:
            x = 1
            for t in range(q - 1):
                exp[t] = x
                log[x] = t
                x = x * self.generator % p
        else:
            g = _digits(self.generator, p, self.n)
            cur = [1]
            for t in range(q - 1):
                v = self.from_coeffs(cur + [0] * (self.n - len(cur)))
                exp[t] = v
                log[v] = t
                cur = _poly_mulmod(cur, g, m, p)
        return exp, log

    @property
    def exp(self) -> list[int]:
        """``exp[t]`` is generator**t for ``0 <= t < q-1``."""
        return self._exp_log[0]

    @property
    def log(self) -> list[int]:
        """Discrete log base the generator; ``log[0] == -1``."""
        return self._exp_log[1]

    @functools.cached_property
    def _digit_table(self) -> np.ndarray:
        v = np.arange(self.q)
        return np.stack([(v // self.p**k) % self.p for k in range(self.n)], axis=1)

    @functools.cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.n)

    @functools.cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.n == 1 or self.q > 1024:
            return None
        d = self._digit_table
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s @ self._powers).astype(np.int64)

    # integer-level arithmetic
    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        t = self._add_table
        if t is not None:
            return int(t[a, b])
        p, out, w = self.p, 0, 1
        for _ in range(self.n):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        p, out, w = self.p, 0, 1
        for _ in range(self.n):
            a, r = divmod(a, p)
            out += ((-r) % p) * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return a * b % self.p
        log = self.log
        return self.exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        if self.n == 1:
            return pow(a, -1, self.p)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("0 has no inverse")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def scalar(self, c: int) -> int:
        """Embed an integer into the prime subfield."""
        return c % self.p

    def trace(self, a: int) -> int:
        """Absolute trace sum_{m<n} a^{p^m}, returned as an integer mod p."""
        s = 0
        x = a
        for _ in range(self.n):
            s = self.add(s, x)
            x = self.pow(x, self.p)
        assert s < self.p
        return s

    def dot(self, b: int, j: int) -> int:
        return self.trace(self.mul(b, j))

    def is_square(self, a: int) -> bool:
        return a != 0 and (self.p == 2 or self.log[a] % 2 == 0)

    def eta(self, a: int) -> int:
        if a == 0:
            return 0
        return 1 if self.is_square(a) else -1

    # vectorized tables for the representation and simulation code
    @functools.cached_property
    def trace_table(self) -> np.ndarray:
        return np.array([self.trace(a) for a in range(self.q)], dtype=np.int64)

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.int64)
        log = np.array(self.log)
        exp = np.array(self.exp)
        nz = np.arange(1, q)
        t[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        return t

    @functools.cached_property
    def dot_table(self) -> np.ndarray:
        """``dot_table[b, j] == trace(b*j)``."""
        return self.trace_table[self.mul_table]

    # element helpers
    def element(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            _check_same(self, v.ctx)
            return v
        if isinstance(v, (tuple, list)):
            return FieldElement(self, self.from_coeffs(v))
        v = int(v)
        if not 0 <= v < self.q:
            raise ValueError(f"element index {v} outside [0, {self.q})")
        return FieldElement(self, v)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def nonzero(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(1, self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def frequencies(self) -> list[Frequency]:
        return [self.coeffs(v) for v in range(self.q)]


def _check_same(a: FieldCtx, b: FieldCtx) -> None:
    if a is not b and a != b:
        raise MixedContexts(f"cannot combine elements of {a!r} and {b!r}")


def make_field(p: int, n: int = 1) -> FieldCtx:
    """Construct F_{p^n} deterministically.

    The modulus is the lexicographically smallest monic irreducible of
    degree n (for n = 1 that is ``x``, so elements are plain residues) and the
    generator is the smallest element of multiplicative order q - 1.
    """
    return _make_field(int(p), int(n))


@functools.cache
def _make_field(p: int, n: int) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise DegreeZero("extension degree must be positive")
    q = p**n
    if q > MAX_ORDER:
        raise FieldTooLarge(f"q = {q} exceeds {MAX_ORDER}")

    modulus = None
    for f in _monic_polys(p, n):
        if is_irreducible(f, p):
            modulus = tuple(f)
            break
    assert modulus is not None

    factors = prime_factors(q - 1)
    generator = None
    for v in range(1, q):
        g = _digits(v, p, n)
        if _poly_powmod(g, q - 1, modulus, p) != [1]:
            continue
        if all(_poly_powmod(g, (q - 1) // r, modulus, p) != [1] for r in factors):
            generator = v
            break
    assert generator is not None
    return FieldCtx(p, n, modulus, generator)


def parse_field(spec: str) -> FieldCtx:
    """Parse ``"p^n"`` (or a bare prime ``"p"``)."""
    s = spec.strip()
    try:
        if "^" in s:
            p_s, n_s = s.split("^", 1)
            return make_field(int(p_s), int(n_s))
        return make_field(int(s), 1)
    except ValueError as exc:
        if isinstance(exc, (NotPrime, DegreeZero)):
            raise
        raise ValueError(f"cannot parse field spec {spec!r}") from exc


@dataclass(frozen=True, slots=True)
class FieldElement:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            _check_same(self.ctx, other.ctx)
            return other.value
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.value, self.ctx.inv(o)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __lt__(self, other: "FieldElement"):
        _check_same(self.ctx, other.ctx)
        return self.value < other.value

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.ctx.n == 1:
            return f"F{self.ctx.q}({self.value})"
        return f"F{self.ctx.q}{list(self.coeffs)}"


# -- module-level operations ---------------------------------------------------

def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def trace(a: FieldElement) -> int:
    return a.ctx.trace(a.value)


def dot(b: FieldElement, j: FieldElement) -> int:
    """Trace pairing Tr(b j), an integer mod p."""
    _check_same(b.ctx, j.ctx)
    return b.ctx.dot(b.value, j.value)


def frequency_element(ctx: FieldCtx, k: Frequency) -> FieldElement:
    """Identify a frequency vector with the field element of the same coefficients."""
    return FieldElement(ctx, ctx.from_coeffs(tuple(k)))


def additive_char(k: Frequency | FieldElement, j: FieldElement) -> complex:
    ctx = j.ctx
    kk = k if isinstance(k, FieldElement) else frequency_element(ctx, k)
    return cmath.exp(2j * math.pi * dot(kk, j) / ctx.p)


def quadratic_char(a: FieldElement) -> int:
    return a.ctx.eta(a.value)


@dataclass(frozen=True)
class GaussSumValue:
    value: complex
    modulus_sq: float
    d: int | None  # value ~ i^d sqrt(q); None when it is not of that shape
    d_parity: str | None  # "even" / "odd"


def _classify_d(value: complex, q: int, tol: float = 1e-9) -> int | None:
    r = math.sqrt(q)
    for d in range(4):
        if abs(value - (1j**d) * r) < tol * max(1.0, r):
            return d
    return None


def gauss_sum(mult_char: str, k: Frequency | FieldElement, ctx: FieldCtx | None = None) -> GaussSumValue:
    """G(m, chi_k) = sum over x != 0 of m(x) chi_k(x), by direct summation.

    ``mult_char`` is ``"trivial"`` or ``"eta"``.
    """
    if isinstance(k, FieldElement):
        ctx = k.ctx
        kv = k.value
    else:
        if ctx is None:
            raise ValueError("a FieldCtx is required when k is a coefficient vector")
        kv = ctx.from_coeffs(tuple(k))
    if mult_char not in ("trivial", "eta"):
        raise ValueError(f"unknown multiplicative character {mult_char!r}")
    p = ctx.p
    total = 0j
    for x in range(1, ctx.q):
        w = cmath.exp(2j * math.pi * ctx.dot(kv, x) / p)
        total += w if mult_char == "trivial" else ctx.eta(x) * w
    d = _classify_d(total, ctx.q) if mult_char == "eta" and kv != 0 else None
    parity = None if d is None else ("even" if d % 2 == 0 else "odd")
    return GaussSumValue(total, abs(total) ** 2, d, parity)
