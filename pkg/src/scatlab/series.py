"""Truncated power series in the variables zeta_i (i unfrozen) over Q.

A :class:`TruncatedSeries` is an element of Q[[zeta]]/m^{k+1}; exponents are
tuples in the e-basis of N_uf.  Coefficients are ``int`` when integral and
``Fraction`` otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ExponentLeavesCone,
    NotInNPlus,
    NotInvertible,
    NotPrimitive,
    OrderMismatch,
)
from .lattice import in_n_plus, is_primitive
from .linalg import frac, norm


def _grlex_key(exp):
    return (sum(exp), exp)


class TruncatedSeries:
    """Element of Q[[zeta_1..zeta_n]] modulo total degree > order."""

    __slots__ = ("nvars", "order", "terms", "_by_degree")

    def __init__(self, nvars: int, order: int, terms: Mapping | None = None):
        self.nvars = nvars
        self.order = order
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError("exponent length does not match nvars")
            if any(e < 0 for e in exp):
                raise ExponentLeavesCone(f"negative exponent {exp}")
            if sum(exp) > order:
                continue
            c = norm(Fraction(c)) if not isinstance(c, int) else c
            if c != 0:
                clean[exp] = c
        self.terms = clean
        self._by_degree = None

    @classmethod
    def _raw(cls, nvars, order, terms):
        s = cls.__new__(cls)
        s.nvars, s.order, s.terms, s._by_degree = nvars, order, terms, None
        return s

    @classmethod
    def one(cls, nvars: int, order: int) -> "TruncatedSeries":
        return cls._raw(nvars, order, {(0,) * nvars: 1})

    @classmethod
    def zero(cls, nvars: int, order: int) -> "TruncatedSeries":
        return cls._raw(nvars, order, {})

    @classmethod
    def monomial(cls, exp: Sequence[int], order: int, coeff=1) -> "TruncatedSeries":
        return cls(len(exp), order, {tuple(exp): coeff})

    # basic protocol --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TruncatedSeries({self.nvars}, {self.order}, {self.sorted_terms()!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"z{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    @property
    def constant(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: 1}

    def degree_part(self, d: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == d}

    def truncate(self, order: int) -> "TruncatedSeries":
        order = min(order, self.order)
        return TruncatedSeries._raw(
            self.nvars, order, {e: c for e, c in self.terms.items() if sum(e) <= order})

    def with_order(self, order: int) -> "TruncatedSeries":
        """Reinterpret at a different truncation order (drops terms above it)."""
        return TruncatedSeries._raw(
            self.nvars, order, {e: c for e, c in self.terms.items() if sum(e) <= order})

    # arithmetic ------------------------------------------------------------

    def _check(self, other):
        if self.order != other.order or self.nvars != other.nvars:
            raise OrderMismatch(
                f"orders/variables differ: ({self.nvars},{self.order}) vs ({other.nvars},{other.order})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries(self.nvars, self.order, {(0,) * self.nvars: other})
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.nvars, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = frac(c)
        if c == 0:
            return TruncatedSeries.zero(self.nvars, self.order)
        return TruncatedSeries._raw(self.nvars, self.order,
                                    {e: norm(c * v) for e, v in self.terms.items()})

    def shift(self, exp: Sequence[int]) -> "TruncatedSeries":
        """Multiply by the monomial zeta^exp."""
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a + b for a, b in zip(e, exp))
            if sum(ne) <= self.order:
                out[ne] = c
        return TruncatedSeries._raw(self.nvars, self.order, out)

    def _degree_buckets(self):
        if self._by_degree is None:
            buckets = {}
            for e, c in self.terms.items():
                buckets.setdefault(sum(e), []).append((e, c))
            self._by_degree = sorted(buckets.items())
        return self._by_degree

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        k = self.order
        out: dict = {}
        ob = other._degree_buckets()
        for ea, ca in self.terms.items():
            room = k - sum(ea)
            for db, items in ob:
                if db > room:
                    break
                for eb, cb in items:
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
        out = {e: norm(c) for e, c in out.items() if c != 0}
        return TruncatedSeries._raw(self.nvars, k, out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c0 = self.constant
        if c0 == 0:
            raise NotInvertible("constant term is zero")
        inv0 = norm(Fraction(1) / Fraction(c0))
        # a = c0 (1 + u) ; a^{-1} = c0^{-1} sum (-u)^j
        u = (self.scale(inv0) - 1)
        result = TruncatedSeries.one(self.nvars, self.order)
        power = TruncatedSeries.one(self.nvars, self.order)
        neg_u = -u
        for _ in range(self.order):
            power = power * neg_u
            if not power.terms:
                break
            result = result + power
        return result.scale(inv0)

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int):
            raise TypeError("integer exponents only")
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.one(self.nvars, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def substitute(self, t: Sequence[Sequence[int]]) -> "TruncatedSeries":
        """Replace every zeta^n by zeta^{T n}; T acts on exponent columns."""
        out: dict = {}
        for e, c in self.terms.items():
            ne = tuple(sum(t[i][j] * e[j] for j in range(len(e))) for i in range(len(t)))
            if any(x < 0 for x in ne):
                raise ExponentLeavesCone(f"exponent {e} maps to {ne}")
            if sum(ne) <= self.order:
                out[ne] = norm(out.get(ne, 0) + c)
        return TruncatedSeries(len(t), self.order, out)

    def max_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    return a ** e


def substitute(a: TruncatedSeries, t) -> TruncatedSeries:
    return a.substitute(t)


def univariate_power(coeffs: Sequence, e: int, length: int) -> list:
    """Coefficients of (1 + sum_l coeffs[l-1] t^l)^e modulo t^{length+1}.

    Uses the J.C.P. Miller recurrence, valid for any integer exponent.
    """
    f = [1] + [frac(c) for c in coeffs[:length]] + [0] * max(0, length - len(coeffs))
    g = [1] + [0] * length
    if e == 0:
        return g
    for n in range(1, length + 1):
        acc = Fraction(0)
        for i in range(1, n + 1):
            if f[i]:
                acc += (e * i - n + i) * f[i] * g[n - i]
        g[n] = norm(acc / n)
    return g


class WallFunction:
    """1 + sum_l c_l zeta^{l n0} with n0 primitive in N^+."""

    __slots__ = ("normal", "coeffs", "order", "_pow_cache")

    def __init__(self, normal: Sequence[int], coeffs: Iterable, order: int):
        normal = tuple(int(x) for x in normal)
        if not in_n_plus(normal):
            raise NotInNPlus(f"{normal} is not in N^+")
        if not is_primitive(normal):
            raise NotPrimitive(f"{normal} is not primitive")
        deg = sum(normal)
        length = order // deg
        cs = [frac(c) for c in coeffs][:length]
        cs += [0] * (length - len(cs))
        self.normal = normal
        self.coeffs = tuple(cs)
        self.order = order
        self._pow_cache = {}

    @property
    def degree(self) -> int:
        return sum(self.normal)

    def __eq__(self, other):
        return (isinstance(other, WallFunction) and self.normal == other.normal
                and self.order == other.order and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.normal, self.order, self.coeffs))

    def __repr__(self):
        return f"WallFunction({self.normal}, {list(self.coeffs)}, order={self.order})"

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def power_coeffs(self, e: int) -> list:
        """Univariate coefficients of f^e (index l is the coefficient of zeta^{l n0})."""
        if e not in self._pow_cache:
            self._pow_cache[e] = univariate_power(self.coeffs, e, len(self.coeffs))
        return self._pow_cache[e]

    def series(self, e: int = 1) -> TruncatedSeries:
        cs = self.power_coeffs(e)
        n = len(self.normal)
        return TruncatedSeries(n, self.order,
                               {tuple(l * x for x in self.normal): c for l, c in enumerate(cs) if c})

    def truncate(self, order: int) -> "WallFunction":
        return WallFunction(self.normal, self.coeffs, min(order, self.order))

    def times(self, other: "WallFunction") -> "WallFunction":
        if other.normal != self.normal:
            raise ValueError("wall functions on different normals")
        order = min(self.order, other.order)
        a = [1] + list(self.coeffs)
        b = [1] + list(other.coeffs)
        n = order // self.degree
        prod = [0] * (n + 1)
        for i in range(min(len(a), n + 1)):
            for j in range(min(len(b), n + 1 - i)):
                prod[i + j] += a[i] * b[j]
        return WallFunction(self.normal, [norm(frac(c)) for c in prod[1:]], order)

    def invert(self) -> "WallFunction":
        return WallFunction(self.normal, self.power_coeffs(-1)[1:], self.order)

    def substitute_normal(self, normal: Sequence[int], order: int | None = None) -> "WallFunction":
        """Same coefficients, new base monomial zeta^normal."""
        return WallFunction(normal, self.coeffs, self.order if order is None else order)


def make_wall_function(n0: Sequence[int], coeffs: Iterable, k: int) -> WallFunction:
    return WallFunction(n0, coeffs, k)


class LaurentElement:
    """z^m times a truncated series in zeta; m is indexed by all of I."""

    __slots__ = ("prefactor", "series")

    def __init__(self, prefactor: Sequence[int], series: TruncatedSeries):
        self.prefactor = tuple(int(x) for x in prefactor)
        self.series = series

    def __eq__(self, other):
        return (isinstance(other, LaurentElement) and self.prefactor == other.prefactor
                and self.series == other.series)

    def __hash__(self):
        return hash((self.prefactor, self.series))

    def __repr__(self):
        return f"LaurentElement(z^{self.prefactor} * ({self.series}))"

    def __mul__(self, other: "LaurentElement") -> "LaurentElement":
        return LaurentElement(tuple(a + b for a, b in zip(self.prefactor, other.prefactor)),
                              self.series * other.series)

    def to_laurent(self, data) -> "LaurentPolynomial":
        """Expand zeta^n = z^{p*(n)} into a Laurent polynomial over all of I."""
        out = {}
        for n, c in self.series.terms.items():
            pn = data.p_star(n)
            e = tuple(a + b for a, b in zip(self.prefactor, pn))
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)


class LaurentPolynomial:
    """Finite Laurent polynomial in z_i, i in I, as {exponent: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms = {tuple(e): norm(frac(c)) for e, c in (terms or {}).items() if c != 0}

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"LaurentPolynomial({self.sorted_terms()})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"z{i + 1}" + (f"^{x}" if x != 1 else "") for i, x in enumerate(e) if x)
            parts.append(mono if c == 1 and mono else (f"{c}*{mono}" if mono else str(c)))
        return " + ".join(parts)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out)

    def __pow__(self, e: int):
        result = LaurentPolynomial({(0,) * self.nvars: 1})
        for _ in range(e):
            result = result * self
        return result

    @property
    def nvars(self) -> int:
        return len(next(iter(self.terms))) if self.terms else 0

    def shift(self, m: Sequence[int]) -> "LaurentPolynomial":
        return LaurentPolynomial({tuple(a + b for a, b in zip(e, m)): c for e, c in self.terms.items()})


def clear_frozen(t, n_uf: int):
    """Multiply by the least z^m (m supported on frozen indices) that clears frozen denominators.

    Accepts a :class:`LaurentPolynomial` or a :class:`LaurentElement` whose
    series has been expanded already; unfrozen exponents are untouched.
    """
    if isinstance(t, LaurentElement):
        raise TypeError("expand with to_laurent(data) before clearing frozen denominators")
    if not t.terms:
        return t
    n = t.nvars
    shift = [0] * n
    for e in t.terms:
        for i in range(n_uf, n):
            shift[i] = max(shift[i], -e[i])
    return t.shift(shift)
