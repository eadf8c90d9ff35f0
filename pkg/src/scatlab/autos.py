"""Wall-crossing automorphisms and their compositions.

An automorphism of the completed ring is stored through the images of the
unfrozen generators: ``z^{f_i} -> z^{f_i} g_i`` with ``g_i`` a unit of
Q[[zeta]]/m^{k+1}.  Frozen ``z^{f_j}`` are always fixed, and

    zeta^n -> zeta^n * prod_l g_l^{p*(n)_l}.
"""

from __future__ import annotations

from typing import Sequence

from .lattice import InitialData
from .linalg import norm
from .series import LaurentElement, TruncatedSeries, WallFunction


def _series_power_cache(base: TruncatedSeries):
    cache = {0: TruncatedSeries.one(base.nvars, base.order), 1: base}

    def power(e: int) -> TruncatedSeries:
        if e not in cache:
            if e < 0:
                cache[e] = power(-e).inverse()
            else:
                half = power(e // 2)
                cache[e] = half * half * (base if e % 2 else cache[0])
        return cache[e]

    return power


class Automorphism:
    """Ring automorphism fixing frozen variables, given by the units g_i."""

    __slots__ = ("data", "order", "images")

    def __init__(self, data: InitialData, order: int, images: Sequence[TruncatedSeries]):
        self.data = data
        self.order = order
        self.images = tuple(images)

    @classmethod
    def identity(cls, data: InitialData, order: int) -> "Automorphism":
        one = TruncatedSeries.one(data.n_uf, order)
        return cls(data, order, [one] * data.n_uf)

    def __eq__(self, other):
        return (isinstance(other, Automorphism) and self.order == other.order
                and self.images == other.images)

    def __hash__(self):
        return hash((self.order, self.images))

    def __repr__(self):
        body = ", ".join(f"z^f{i + 1} -> z^f{i + 1}*({g})" for i, g in enumerate(self.images))
        return f"Automorphism(order={self.order}: {body})"

    def is_identity(self) -> bool:
        return all(g.is_one() for g in self.images)

    def truncate(self, order: int) -> "Automorphism":
        return Automorphism(self.data, order, [g.truncate(order) for g in self.images])

    def monomial_factor(self, m: Sequence[int]) -> TruncatedSeries:
        """The unit u with z^m -> z^m u (m in f-coordinates, frozen part ignored)."""
        out = TruncatedSeries.one(self.data.n_uf, self.order)
        for l, e in enumerate(m[: self.data.n_uf]):
            if e:
                out = out * (self.images[l] ** int(e))
        return out

    def apply_monomial(self, m: Sequence[int]) -> LaurentElement:
        return LaurentElement(m, self.monomial_factor(m))

    def apply_series(self, s: TruncatedSeries) -> TruncatedSeries:
        """Image of a series in zeta (substitute zeta_j -> zeta_j prod_l g_l^{b_jl})."""
        n = self.data.n_uf
        h = []
        for j in range(n):
            ej = tuple(int(i == j) for i in range(n))
            h.append(self.monomial_factor(self.data.p_star(ej)).shift(ej))
        powers = [_series_power_cache(hj) for hj in h]
        out = TruncatedSeries.zero(n, self.order)
        for e, c in s.terms.items():
            term = TruncatedSeries.one(n, self.order)
            for j, x in enumerate(e):
                if x:
                    term = term * powers[j](x)
            out = out + term.scale(c)
        return out

    def apply_laurent(self, el: LaurentElement) -> LaurentElement:
        return LaurentElement(el.prefactor, self.monomial_factor(el.prefactor) * self.apply_series(el.series))

    def compose(self, inner: "Automorphism") -> "Automorphism":
        """self o inner (inner applied first)."""
        imgs = [a * self.apply_series(b) for a, b in zip(self.images, inner.images)]
        return Automorphism(self.data, self.order, imgs)

    __matmul__ = compose


class WallCrossing:
    """z^m -> z^m f^{sign * <m, n0'>} for a wall function f with normal n0."""

    __slots__ = ("data", "fn", "sign", "order", "_nprime")

    def __init__(self, data: InitialData, fn: WallFunction, sign: int, order: int | None = None):
        self.data = data
        self.order = fn.order if order is None else order
        self.fn = fn if fn.order == self.order else WallFunction(fn.normal, fn.coeffs, self.order)
        self.sign = 1 if sign > 0 else -1
        self._nprime = data.n_prime(fn.normal)

    def exponent(self, m: Sequence[int]) -> int:
        """sign * <m, n0'> (an integer for m in M°)."""
        return self.sign * norm(self.data.pair(m, self._nprime))

    def bracket_exponent(self, n: Sequence[int]) -> int:
        return self.exponent(self.data.p_star_uf(n))

    def monomial_factor(self, m: Sequence[int]) -> TruncatedSeries:
        return self.fn.series(self.exponent(m))

    def apply_monomial(self, m: Sequence[int]) -> LaurentElement:
        return LaurentElement(m, self.monomial_factor(m))

    def apply_series(self, s: TruncatedSeries) -> TruncatedSeries:
        groups: dict = {}
        for n, c in s.terms.items():
            groups.setdefault(self.bracket_exponent(n), {})[n] = c
        out = TruncatedSeries.zero(s.nvars, s.order)
        for e, terms in groups.items():
            part = TruncatedSeries._raw(s.nvars, s.order, terms)
            out = out + (part if e == 0 else part * self.fn.series(e))
        return out

    def images(self) -> list[TruncatedSeries]:
        n = self.data.n_uf
        return [self.monomial_factor(tuple(int(i == j) for j in range(n))) for i in range(n)]

    def as_automorphism(self) -> Automorphism:
        return Automorphism(self.data, self.order, self.images())

    def after(self, inner: Automorphism) -> Automorphism:
        """self o inner."""
        imgs = [a * self.apply_series(b) for a, b in zip(self.images(), inner.images)]
        return Automorphism(self.data, self.order, imgs)

    def inverse(self) -> "WallCrossing":
        return WallCrossing(self.data, self.fn, -self.sign, self.order)


def compose_crossings(data: InitialData, order: int, crossings: Sequence[WallCrossing]) -> Automorphism:
    """p_l o ... o p_1 for crossings listed in time order."""
    result = Automorphism.identity(data, order)
    for c in crossings:
        result = c.after(result)
    return result
