"""Small exact linear-algebra kit over the rationals.

Vectors are tuples whose entries are ``int`` or ``Fraction``.  Integral
fractions are collapsed back to ``int`` so that the common all-integer case
stays on the fast path.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def norm(x):
    """Collapse an integral ``Fraction`` to ``int``."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def frac(x) -> Fraction | int:
    if isinstance(x, str):
        return norm(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted in exact code")
    return norm(Fraction(x))


def vec(xs: Iterable) -> tuple:
    return tuple(frac(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return norm(sum(x * y for x, y in zip(a, b)))


def add(a, b):
    return tuple(norm(x + y) for x, y in zip(a, b))


def sub(a, b):
    return tuple(norm(x - y) for x, y in zip(a, b))


def scale(c, a):
    return tuple(norm(c * x) for x in a)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive(v: Sequence) -> tuple:
    """Smallest positive rational multiple of ``v`` with coprime integer entries."""
    if is_zero(v):
        return tuple(0 for _ in v)
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = [[norm(x) for x in row] for row in m[:r]]
    return out, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of {x : row . x = 0 for every row}, as primitive integer vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -Fraction(row[f])
        basis.append(primitive(x))
    return basis


def solve_square(a: Sequence[Sequence], b: Sequence) -> tuple:
    """Solve a x = b for invertible square a."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(norm(red[i][n]) for i in range(n))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(r, c) for c in cols) for r in a)


def row_times(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix (matrices act on row vectors from the right)."""
    return tuple(dot(v, c) for c in zip(*m))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(r, v) for r in m)


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m))
