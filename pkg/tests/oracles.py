"""Independent brute-force oracles.

Nothing here imports the package: fields are plain coefficient lists,
matrices are numpy arrays reduced mod p, and sums run over everything.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np


# -- polynomial field arithmetic (no log tables) ----------------------------------

def poly_mul(a, b, modulus, p):
    """Product of coefficient lists (low degree first) reduced by a monic modulus."""
    n = len(modulus) - 1
    prod = [0] * (2 * n)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * modulus[i]) % p
    return prod[:n]


def to_coeffs(v, p, n):
    return [(v // p**i) % p for i in range(n)]


def from_coeffs(c, p):
    return sum(x * p**i for i, x in enumerate(c))


def naive_mul(v, w, p, modulus):
    n = len(modulus) - 1
    return from_coeffs(poly_mul(to_coeffs(v, p, n), to_coeffs(w, p, n), modulus, p), p)


def naive_trace(v, p, modulus):
    """Tr(x) = x + x^p + ... + x^(p^(n-1)), read off as the constant coefficient."""
    n = len(modulus) - 1
    x = to_coeffs(v, p, n)
    total = [0] * n
    cur = x
    for _ in range(n):
        total = [(s + c) % p for s, c in zip(total, cur)]
        nxt = [1] + [0] * (n - 1)
        for _ in range(p):
            nxt = poly_mul(nxt, cur, modulus, p)
        cur = nxt
    assert all(c == 0 for c in total[1:])
    return total[0]


def naive_is_square(v, q, p, modulus):
    return any(naive_mul(x, x, p, modulus) == v for x in range(1, q))


def naive_gauss_sum(q, p, modulus):
    """sum over x != 0 of eta(x) exp(2 pi i Tr(x) / p), with eta by exhaustive squaring."""
    sq = {naive_mul(x, x, p, modulus) for x in range(1, q)}
    total = 0j
    for x in range(1, q):
        eta = 1 if x in sq else -1
        total += eta * cmath.exp(2j * math.pi * naive_trace(x, p, modulus) / p)
    return total


# -- matrix groups over a prime field ---------------------------------------------

def naive_group_orders(p):
    """(|GL|, |SL|, |PGL|, |PSL|) for 2x2 matrices over Z/p by counting."""
    gl = sl = 0
    mats = []
    for a, b, c, d in itertools.product(range(p), repeat=4):
        det = (a * d - b * c) % p
        if det:
            gl += 1
            mats.append((a, b, c, d, det))
            if det == 1:
                sl += 1
    # scalar classes: m ~ l m
    pgl = len({min(tuple(l * x % p for x in m[:4]) for l in range(1, p)) for m in mats})
    psl = len({min(m[:4], tuple(-x % p for x in m[:4])) for m in mats if m[4] == 1})
    return gl, sl, pgl, psl


def naive_mobius(m, x, p):
    """Action on Z/p + {None}, None standing for infinity."""
    a, b, c, d = m
    if x is None:
        return None if c == 0 else a * pow(c, -1, p) % p
    den = (c * x + d) % p
    if den == 0:
        return None
    return (a * x + b) * pow(den, -1, p) % p


# -- affine group AGL(1; p) -------------------------------------------------------

def naive_affine_pgl_distribution(p, b):
    """Frequency distribution for the PGL Borel over a prime field.

    Works in AGL(1; p) with hidden H = {x -> a x + (1 - a) b}: takes the
    Fourier coefficient of the indicator of H in the (p-1)-dimensional irrep,
    keeps its first column, and applies the additive transform on the rows.
    """
    q = p
    w = np.exp(2j * np.pi / q)
    # hidden coset through the identity: the maps fixing b
    coset = [(a, (1 - a) * b % q) for a in range(1, q)]
    # rho((a, t))[j, k] = w^(t j) [k = a j]; coefficient = sum_h rho(h)^dagger
    rhohat = np.zeros((q - 1, q - 1), dtype=complex)
    for a, t in coset:
        for j in range(1, q):
            k = a * j % q
            rhohat[k - 1, j - 1] += np.conj(w ** (t * j))
    col = rhohat[:, 0]
    col = col / np.linalg.norm(col)
    amp = np.zeros(q, dtype=complex)
    for ell in range(q):
        amp[ell] = sum(np.conj(w ** (ell * j)) * col[j - 1] for j in range(1, q)) / math.sqrt(q)
    return np.abs(amp) ** 2


# -- F_2 linear algebra -----------------------------------------------------------

def rank_mod2(M):
    M = np.array(M, dtype=np.int64) % 2
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i, c]), None)
        if piv is None:
            continue
        M[[r, piv]] = M[[piv, r]]
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] ^= M[r]
        r += 1
    return r


def naive_gl2_count(d):
    return sum(1 for bits in itertools.product((0, 1), repeat=d * d)
               if rank_mod2(np.array(bits).reshape(d, d)) == d)
