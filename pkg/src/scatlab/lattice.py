"""Exchange matrices, skew-symmetrizers, the map p*, matrix mutation and the
piecewise-linear mutation maps.

Coordinates: N-vectors are integer columns in the basis (e_i); vectors of
V* and M° are rows in the basis (f_i) with f_i = e_i^*/d_i, so that
``<f_i, e_j> = delta_ij / d_i``.  Indices are 0-based throughout the Python
API.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from .errors import (
    BudgetExceeded,
    IndexOutOfRange,
    NotSkewSymmetrizable,
    UnfrozenOnly,
)
from .linalg import frac, lcm, norm, rank, sign


def _as_rows(a) -> tuple[tuple, ...]:
    return tuple(tuple(frac(x) for x in row) for row in a)


def skew_symmetrizer(b: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Positive integers d with d_i b_ij = -d_j b_ji.

    Each connected component of the sign pattern is solved from its smallest
    index and rescaled to coprime integers, so the answer is deterministic.

    >>> skew_symmetrizer([[0, 1], [-2, 0]])
    (2, 1)
    """
    b = _as_rows(b)
    n = len(b)
    if any(len(row) != n for row in b):
        raise NotSkewSymmetrizable("matrix is not square")
    for i in range(n):
        if b[i][i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at {i}")
        for j in range(n):
            if (b[i][j] == 0) != (b[j][i] == 0) or b[i][j] * b[j][i] > 0:
                raise NotSkewSymmetrizable(f"entries ({i},{j}) and ({j},{i}) are incompatible")
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        comp = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if b[i][j] == 0:
                    continue
                want = -d[i] * b[i][j] / b[j][i]
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    raise NotSkewSymmetrizable("inconsistent cycle in the sign pattern")
        den = 1
        for j in comp:
            den = lcm(den, d[j].denominator)
        g = 0
        for j in comp:
            g = gcd(g, int(d[j] * den))
        for j in comp:
            d[j] = Fraction(int(d[j] * den) // g)
    return tuple(int(x) for x in d)


def mutate_once(a, k: int) -> tuple[tuple, ...]:
    """Single matrix mutation at index k (works for any rectangular matrix)."""
    a = _as_rows(a)
    if not a or not (0 <= k < len(a)) or not (0 <= k < len(a[0])):
        raise IndexOutOfRange(f"mutation index {k} out of range")
    out = []
    for i, row in enumerate(a):
        new = []
        for j, x in enumerate(row):
            if i == k or j == k:
                new.append(norm(-x))
            else:
                bik, bkj = a[i][k], a[k][j]
                new.append(norm(x + sign(bkj) * max(bik * bkj, 0)))
        out.append(tuple(new))
    return tuple(out)


def mutate_matrix(a, seq: Sequence[int]) -> tuple[tuple, ...]:
    """Mutate ``a`` along ``seq``, first index first."""
    a = _as_rows(a)
    for k in seq:
        a = mutate_once(a, k)
    return a


def eta(b, seq: Sequence[int], v: Sequence) -> tuple:
    """Mutation map: bottom row of the mutated matrix ``b`` augmented by ``v``."""
    b = _as_rows(b)
    n = len(b)
    if len(v) != n:
        raise ValueError("vector length does not match the exchange matrix")
    for k in seq:
        if not 0 <= k < n:
            raise IndexOutOfRange(f"mutation index {k} out of range")
    aug = b + (tuple(frac(x) for x in v),)
    return mutate_matrix(aug, seq)[-1]


def eta_step_matrix(b, k: int, positive: bool) -> tuple[tuple, ...]:
    """Matrix J_k + [+-B^{k.}]_+ so that eta_k(v) = v * M on the given side of e_k^perp."""
    b = _as_rows(b)
    n = len(b)
    s = 1 if positive else -1
    rows = []
    for i in range(n):
        if i == k:
            rows.append(tuple(-1 if j == k else max(s * b[k][j], 0) for j in range(n)))
        else:
            rows.append(tuple(int(i == j) for j in range(n)))
    return tuple(rows)


@dataclass(frozen=True)
class ExchangeMatrix:
    """Extended exchange matrix: rows indexed by I_uf, columns by I.

    The first ``n_uf`` columns are the unfrozen ones.
    """

    n_uf: int
    n_total: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n_uf or any(len(r) != self.n_total for r in rows):
            raise ValueError("rows must be n_uf x n_total")
        if self.n_total < self.n_uf:
            raise ValueError("n_total must be at least n_uf")
        skew_symmetrizer(self.square)

    @classmethod
    def from_rows(cls, rows, n_uf: int | None = None) -> "ExchangeMatrix":
        rows = [list(r) for r in rows]
        n_uf = len(rows) if n_uf is None else n_uf
        return cls(n_uf, len(rows[0]) if rows else 0, tuple(tuple(r) for r in rows))

    @property
    def square(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r[: self.n_uf] for r in self.rows)

    @property
    def is_full_rank(self) -> bool:
        return rank(self.rows) == self.n_uf

    def mutate(self, seq: Sequence[int]) -> "ExchangeMatrix":
        for k in seq:
            if not 0 <= k < self.n_uf:
                raise IndexOutOfRange(f"mutation index {k} is not unfrozen")
        return ExchangeMatrix(self.n_uf, self.n_total, mutate_matrix(self.rows, seq))

    def with_frozen(self, frozen_columns) -> "ExchangeMatrix":
        """Extend by extra frozen columns (given as rows over I_uf)."""
        extra = [tuple(r) for r in frozen_columns]
        rows = tuple(r + e for r, e in zip(self.rows, extra))
        return ExchangeMatrix(self.n_uf, len(rows[0]), rows)

    def principal(self) -> "ExchangeMatrix":
        """Principal coefficients: the square block followed by an identity block."""
        n = self.n_uf
        return ExchangeMatrix(n, 2 * n, tuple(r + tuple(int(i == j) for j in range(n))
                                              for i, r in enumerate(self.square)))


def exchange(rows) -> ExchangeMatrix:
    return ExchangeMatrix.from_rows(rows)


A2 = exchange([[0, 1], [-1, 0]])
B2 = exchange([[0, 1], [-2, 0]])
G2 = exchange([[0, 1], [-3, 0]])
KRONECKER2 = exchange([[0, 2], [-2, 0]])
A3 = exchange([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
MARKOV = exchange([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])


@dataclass(frozen=True)
class InitialData:
    """Initial data in coordinates: the extended exchange matrix and d."""

    exchange: ExchangeMatrix
    d: tuple[int, ...] = field(default=())

    def __post_init__(self):
        d_uf = skew_symmetrizer(self.exchange.square)
        if self.d and tuple(self.d[: self.n_uf]) != d_uf:
            raise NotSkewSymmetrizable("given d does not symmetrize the exchange matrix")
        object.__setattr__(self, "d", d_uf + (1,) * (self.exchange.n_total - self.n_uf))

    @classmethod
    def of(cls, m) -> "InitialData":
        if isinstance(m, InitialData):
            return m
        if not isinstance(m, ExchangeMatrix):
            m = exchange(m)
        return cls(m)

    @property
    def n_uf(self) -> int:
        return self.exchange.n_uf

    @property
    def n_total(self) -> int:
        return self.exchange.n_total

    @property
    def b(self):
        return self.exchange.square

    def mutate(self, seq: Sequence[int]) -> "InitialData":
        return InitialData(self.exchange.mutate(seq))

    # pairing and lattices -------------------------------------------------

    def covector(self, n: Sequence[int]) -> tuple:
        """Coefficients w with <v, n> = w . v for v in f-coordinates over I_uf."""
        return tuple(norm(Fraction(n[i], self.d[i])) for i in range(self.n_uf))

    def pair(self, m: Sequence, n: Sequence[int]):
        """Natural pairing <m, n>, m in f-coordinates, n in e-coordinates."""
        return norm(sum(Fraction(m[i]) * n[i] / self.d[i] for i in range(min(len(m), len(n)))))

    def n_prime(self, n0: Sequence[int]) -> tuple[int, ...]:
        """Smallest positive multiple of n0 lying in N° (spanned by d_i e_i)."""
        c = 1
        for i, x in enumerate(n0):
            if x:
                c = lcm(c, self.d[i] // gcd(self.d[i], abs(x)))
        return tuple(c * x for x in n0)

    @cached_property
    def _p_rows(self):
        return self.exchange.rows

    def p_star(self, n: Sequence[int]) -> tuple[int, ...]:
        """p*(n) in f-coordinates over all of I."""
        if len(n) > self.n_uf and any(n[self.n_uf:]):
            raise UnfrozenOnly("p* is only defined on N_uf")
        return tuple(sum(n[i] * self._p_rows[i][j] for i in range(self.n_uf))
                     for j in range(self.n_total))

    def p_star_uf(self, n: Sequence[int]) -> tuple[int, ...]:
        return self.p_star(n)[: self.n_uf]

    def bracket(self, n1: Sequence[int], n2: Sequence[int]):
        """{n1, n2} = <p*(n1), n2>."""
        return self.pair(self.p_star_uf(n1), n2)


def in_n_plus(n: Sequence[int], n_uf: int | None = None) -> bool:
    n_uf = len(n) if n_uf is None else n_uf
    return all(x >= 0 for x in n) and any(n[:n_uf]) and not any(n[n_uf:])


def is_primitive(n: Sequence[int]) -> bool:
    g = 0
    for x in n:
        g = gcd(g, int(x))
    return g == 1


def p_star(data: InitialData, n: Sequence[int]) -> tuple[int, ...]:
    return data.p_star(n)


def _components(b) -> list[list[int]]:
    n = len(b)
    seen, comps = set(), []
    for r in range(n):
        if r in seen:
            continue
        comp, stack = [], [r]
        seen.add(r)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if b[i][j] and j not in seen:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def block_criterion(b) -> bool:
    """Every 2x2 principal block is of finite or affine type (b_ij b_ji >= -4)."""
    n = len(b)
    return all(b[i][j] * b[j][i] >= -4 for i in range(n) for j in range(n))


def is_finite_mutation_type(b, cap: int = 20000) -> bool:
    """Decide finite mutation type by memoized BFS over the mutation class.

    Components of size at most two are always mutation finite.  Larger
    components are explored until either a matrix fails the 2x2 block
    criterion or the class closes; ``BudgetExceeded`` if ``cap`` matrices are
    visited first.
    """
    b = _as_rows(b)
    skew_symmetrizer(b)
    for comp in _components(b):
        if len(comp) <= 2:
            continue
        sub = tuple(tuple(b[i][j] for j in comp) for i in comp)
        seen = {sub}
        queue = deque([sub])
        while queue:
            m = queue.popleft()
            if not block_criterion(m):
                return False
            for k in range(len(comp)):
                nxt = mutate_once(m, k)
                if nxt not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceeded(f"mutation class exceeds {cap} matrices")
                    seen.add(nxt)
                    queue.append(nxt)
    return True
