"""Independent cluster-algebra oracle: Laurent expressions by explicit mutation in sympy.

Nothing here touches scattering diagrams; the only shared code is the
matrix bookkeeping of ``ExchangeMatrix`` and the ``LaurentPolynomial``
container used for the answer.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import product
from typing import Sequence

import sympy

from .lattice import InitialData
from .series import LaurentPolynomial


def fz_matrix(B, convention: str = "transpose") -> list[list[int]]:
    """Column-mutation matrix b[j][k] (j over all indices, k unfrozen).

    ``"transpose"``: b_jk = -eps_kj for every j, i.e. minus the transpose of
    the full exchange matrix; this is the convention matching theta functions.
    ``"direct"``: b_jk = eps_jk on the square block, frozen rows filled in by
    skew-symmetrizability with d_j = 1.  The two agree for skew-symmetric B.
    """
    data = InitialData.of(B)
    eps = data.exchange.rows
    n, m = data.n_uf, data.n_total
    if convention not in ("transpose", "direct"):
        raise ValueError(f"unknown convention {convention!r}")
    out = [[0] * n for _ in range(m)]
    for j in range(m):
        for k in range(n):
            if convention == "transpose":
                out[j][k] = -eps[k][j]
            elif j < n:
                out[j][k] = eps[j][k]
            else:
                out[j][k] = -data.d[k] * eps[k][j]
    return out


def _mutate_fz(b, k):
    m, n = len(b), len(b[0])
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + (abs(b[i][k]) * b[k][j] + b[i][k] * abs(b[k][j])) // 2
    return out


class ClusterOracle:
    """Seeds reached from the initial seed by explicit exchange relations."""

    def __init__(self, B, convention: str = "transpose"):
        self.data = InitialData.of(B)
        self.n = self.data.n_uf
        self.m = self.data.n_total
        self.symbols = sympy.symbols(f"x1:{self.m + 1}")
        self.b0 = fz_matrix(B, convention)

    def initial_seed(self):
        return (tuple(self.symbols[: self.n]), self.b0)

    def mutate(self, seed, k: int):
        xs, b = seed
        frozen = self.symbols[self.n:]
        allx = list(xs) + list(frozen)
        pos = sympy.Mul(*[allx[j] ** b[j][k] for j in range(self.m) if b[j][k] > 0])
        neg = sympy.Mul(*[allx[j] ** (-b[j][k]) for j in range(self.m) if b[j][k] < 0])
        new = sympy.factor(sympy.cancel((pos + neg) / xs[k]))
        xs = tuple(new if i == k else x for i, x in enumerate(xs))
        return (xs, _mutate_fz(b, k))

    def along(self, seq: Sequence[int]) -> list:
        """The new cluster variable created at each step of ``seq``."""
        seed = self.initial_seed()
        out = []
        for k in seq:
            seed = self.mutate(seed, k)
            out.append(seed[0][k])
        return out

    def laurent(self, expr) -> LaurentPolynomial:
        return to_laurent(expr, self.symbols)

    def exchange_graph(self, depth: int):
        """Clusters (as frozensets of Laurent polynomials) found by BFS to ``depth``."""
        start = self.initial_seed()
        key = lambda s: frozenset(self.laurent(x) for x in s[0])
        seen = {key(start): start}
        queue = deque([(start, 0)])
        while queue:
            seed, q = queue.popleft()
            if q == depth:
                continue
            for k in range(self.n):
                nxt = self.mutate(seed, k)
                kk = key(nxt)
                if kk not in seen:
                    seen[kk] = nxt
                    queue.append((nxt, q + 1))
        return seen

    def g_vector(self, lp: LaurentPolynomial) -> tuple:
        """Exponent surviving when frozen variables are set to zero (principal coefficients)."""
        survivors = [e for e in lp.terms if all(x == 0 for x in e[self.n:])]
        if len(survivors) != 1 or lp.terms[survivors[0]] != 1:
            raise ValueError("not a principal-coefficient cluster monomial")
        return tuple(survivors[0][: self.n])

    def cluster_monomials(self, box: int, depth: int = 20) -> dict:
        """Cluster monomials keyed by g-vector, for g in [-box, box]^n."""
        clusters = self.exchange_graph(depth)
        out = {}
        for cluster in clusters:
            variables = sorted(cluster, key=lambda p: sorted(p.terms))
            gs = [self.g_vector(v) for v in variables]
            inv = sympy.Matrix(gs).T.inv()
            for target in product(range(-box, box + 1), repeat=self.n):
                if target in out:
                    continue
                a = inv * sympy.Matrix(target)
                if any(not x.is_integer or x < 0 for x in a):
                    continue
                mono = LaurentPolynomial({(0,) * self.m: 1})
                for v, ai in zip(variables, a):
                    mono = mono * v ** int(ai)
                out[target] = mono
        return out


def to_laurent(expr, symbols) -> LaurentPolynomial:
    """Convert a sympy Laurent polynomial in ``symbols``; the denominator must be a monomial."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    dpoly = sympy.Poly(den, *symbols)
    if len(dpoly.terms()) != 1:
        raise ValueError(f"{expr} is not a Laurent polynomial")
    (dexp, dcoef), = dpoly.terms()
    terms = {}
    for exp, c in sympy.Poly(num, *symbols).terms():
        e = tuple(a - b for a, b in zip(exp, dexp))
        terms[e] = Fraction(int(sympy.numer(c)), int(sympy.denom(c))) / Fraction(int(sympy.numer(dcoef)), int(sympy.denom(dcoef)))
    return LaurentPolynomial(terms)


def cluster_oracle(B, seq: Sequence[int], convention: str = "transpose") -> list[LaurentPolynomial]:
    """Cluster variables created along ``seq`` (0-based), as Laurent polynomials in the initial cluster."""
    oracle = ClusterOracle(B, convention)
    return [oracle.laurent(x) for x in oracle.along(seq)]
