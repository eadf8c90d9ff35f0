"""Algebraic laws shared by the hypothesis suites and the acceptance run.

Each ``random_*`` helper builds an input from a ``random.Random``; each
``law_*`` function raises AssertionError when the law fails.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from scatlab.autos import WallCrossing
from scatlab.lattice import InitialData, eta, mutate_matrix
from scatlab.series import LaurentElement, TruncatedSeries, WallFunction


def random_rational(rng: random.Random, size=5):
    return Fraction(rng.randint(-size, size), rng.randint(1, 4))


def random_series(rng: random.Random, nvars=2, order=None, unit=False):
    order = rng.randint(0, 5) if order is None else order
    terms = {}
    for _ in range(rng.randint(0, 6)):
        e = tuple(rng.randint(0, order) for _ in range(nvars))
        if sum(e) <= order:
            terms[e] = random_rational(rng)
    if unit:
        c = random_rational(rng)
        terms[(0,) * nvars] = c if c else Fraction(1)
    return TruncatedSeries(nvars, order, terms)


def random_exchange(rng: random.Random, n=None, frozen=None):
    """Skew-symmetrizable square block b_ij = s_ij d_j plus random frozen columns."""
    n = rng.randint(2, 4) if n is None else n
    frozen = rng.randint(0, 2) if frozen is None else frozen
    d = [rng.randint(1, 3) for _ in range(n)]
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s[i][j] = rng.randint(-2, 2)
            s[j][i] = -s[i][j]
    return [[s[i][j] * d[j] for j in range(n)] + [rng.randint(-3, 3) for _ in range(frozen)]
            for i in range(n)]


def random_primitive_normal(rng: random.Random, n: int):
    while True:
        v = [rng.randint(0, 3) for _ in range(n)]
        if any(v):
            g = 0
            for x in v:
                g = gcd(g, x)
            if g == 1:
                return tuple(v)


# series ring ---------------------------------------------------------------------------


def law_ring_axioms(a, b, c):
    one = TruncatedSeries.one(a.nvars, a.order)
    zero = TruncatedSeries.zero(a.nvars, a.order)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * one == a and a + zero == a
    assert a - a == zero


def law_unit_inverse(u):
    assert u * u.inverse() == TruncatedSeries.one(u.nvars, u.order)
    assert u.inverse().inverse() == u


def law_truncation_is_a_homomorphism(a, b, order):
    assert (a * b).truncate(order) == a.truncate(order) * b.truncate(order)
    assert (a + b).truncate(order) == a.truncate(order) + b.truncate(order)


# mutation ------------------------------------------------------------------------------


def law_mutation_involution(rows, k):
    once = mutate_matrix(rows, [k])
    assert mutate_matrix(once, [k]) == tuple(map(tuple, rows))


def law_eta_involution(rows, k, v):
    square = [r[: len(rows)] for r in rows]
    there = eta(square, [k], v)
    assert eta(mutate_matrix(square, [k]), [k], there) == tuple(v)


# wall crossing -------------------------------------------------------------------------


def law_inverse_crossing(rows, normal, coeffs, sign, order, element):
    data = InitialData.of(rows)
    fn = WallFunction(normal, coeffs, order)
    cross = WallCrossing(data, fn, sign, order)
    back = cross.inverse()
    assert back.after(cross.as_automorphism()).is_identity()
    assert cross.after(back.as_automorphism()).is_identity()
    there = cross.as_automorphism().apply_laurent(element)
    assert back.as_automorphism().apply_laurent(there) == element


def random_crossing_case(rng: random.Random):
    rows = random_exchange(rng, n=rng.randint(2, 3))
    data = InitialData.of(rows)
    n = data.n_uf
    order = rng.randint(1, 5)
    normal = random_primitive_normal(rng, n)
    coeffs = [random_rational(rng) for _ in range(order)]
    m = tuple(rng.randint(-3, 3) * data.d[i] if i < n else rng.randint(-2, 2)
              for i in range(data.n_total))
    element = LaurentElement(m, random_series(rng, n, order, unit=True))
    return rows, normal, coeffs, rng.choice((1, -1)), order, element


def run_all(cases=1000, seed=0):
    """Run every law on ``cases`` random inputs each; returns the number of checks."""
    rng = random.Random(seed)
    checks = 0
    for _ in range(cases):
        order = rng.randint(0, 5)
        nv = rng.randint(1, 3)
        a, b, c = (random_series(rng, nv, order) for _ in range(3))
        law_ring_axioms(a, b, c)
        law_unit_inverse(random_series(rng, nv, order, unit=True))
        law_truncation_is_a_homomorphism(a, b, rng.randint(0, order))
        rows = random_exchange(rng)
        n = len(rows)
        k = rng.randrange(n)
        law_mutation_involution(rows, k)
        law_eta_involution(rows, k, [random_rational(rng, 9) for _ in range(n)])
        law_inverse_crossing(*random_crossing_case(rng))
        checks += 6
    return checks
