"""Theta functions from broken lines and from path-ordered products."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .diagram import PiecewisePath, ScatteringDiagram, path_crossings, path_ordered_product
from .errors import NonGenericEndpoint, NotGeneric, NotInChamberFan, ZeroExponent
from .lattice import InitialData
from .linalg import dot, frac, norm
from .series import LaurentElement, LaurentPolynomial, TruncatedSeries
from .series import clear_frozen as _clear_polynomial
from .transport import _make_chamber, chamber_fan, cluster_subdiagram


class ThetaFunction:
    """z^{m0} times a truncated series in zeta."""

    __slots__ = ("data", "m0", "series")

    def __init__(self, data: InitialData, m0: Sequence[int], series: TruncatedSeries):
        self.data = data
        self.m0 = _pad(data, m0)
        self.series = series

    @property
    def order(self) -> int:
        return self.series.order

    def __eq__(self, other):
        return (isinstance(other, ThetaFunction) and self.m0 == other.m0
                and self.series == other.series)

    def __hash__(self):
        return hash((self.m0, self.series))

    def __repr__(self):
        return f"ThetaFunction(z^{list(self.m0)} * ({self.series}))"

    def element(self) -> LaurentElement:
        return LaurentElement(self.m0, self.series)

    def to_laurent(self) -> LaurentPolynomial:
        return self.element().to_laurent(self.data)

    def truncate(self, order: int) -> "ThetaFunction":
        return ThetaFunction(self.data, self.m0, self.series.truncate(order))


def _pad(data: InitialData, m) -> tuple:
    m = tuple(int(x) for x in m)
    if len(m) == data.n_uf:
        m = m + (0,) * (data.n_total - data.n_uf)
    if len(m) != data.n_total:
        raise ValueError("exponent has the wrong length")
    return m


def clear_frozen(t, n_uf: int | None = None):
    """Multiply by the least frozen monomial clearing frozen denominators.

    ThetaFunction in, ThetaFunction out (the shift lands in the prefactor).
    A LaurentPolynomial needs ``n_uf``.
    """
    if isinstance(t, ThetaFunction):
        lp = t.to_laurent()
        n = t.data.n_uf
        shift = [0] * t.data.n_total
        for e in lp.terms:
            for i in range(n, len(e)):
                shift[i] = max(shift[i], -e[i])
        return ThetaFunction(t.data, tuple(a + b for a, b in zip(t.m0, shift)), t.series)
    if n_uf is None:
        raise TypeError("n_uf is required for a LaurentPolynomial")
    return _clear_polynomial(t, n_uf)


# path-ordered products -----------------------------------------------------------


DEFAULT_Q = {1: (1,), 2: (Fraction(89, 97), Fraction(113, 89)),
             3: (Fraction(89, 97), Fraction(113, 89), Fraction(131, 127))}


def default_basepoint(n: int) -> tuple:
    if n in DEFAULT_Q:
        return DEFAULT_Q[n]
    return tuple(Fraction(89 + 6 * i, 97 - 2 * i) for i in range(n))


def chamber_path(data: InitialData, seq: Sequence[int], q: Sequence, D: ScatteringDiagram) -> PiecewisePath:
    """Generic path from the interior of the chamber of ``seq`` to q in C^+."""
    chain = [_make_chamber(data, tuple(seq[:j])).cone for j in range(len(seq) + 1)]
    start = chain[-1].relint_point()
    eps = Fraction(1, 2)
    for _ in range(40):
        verts = [start]
        for j in range(len(seq), 0, -1):
            here, there = chain[j], chain[j - 1]
            c = here.intersect(there).relint_point()
            ph, pt = here.relint_point(), there.relint_point()
            verts.append(tuple(norm(ci + eps * (a - ci)) for ci, a in zip(c, ph)))
            verts.append(tuple(norm(ci + eps * (a - ci)) for ci, a in zip(c, pt)))
        verts.append(tuple(frac(x) for x in q))
        clean = [verts[0]]
        for v in verts[1:]:
            if v != clean[-1]:
                clean.append(v)
        if len(clean) == 1:
            clean.append(clean[0])
        try:
            path = PiecewisePath(tuple(clean))
            path_crossings(D, path)
            return path
        except (NotGeneric, ValueError):
            eps /= 2
    raise NotGeneric("could not build a generic chamber path")


def theta_pop(B, m0: Sequence[int], depth: int = 12, k: int = 8, Q: Sequence | None = None,
              fan=None) -> ThetaFunction:
    """Theta function of a chamber exponent via the path-ordered product to Q in C^+."""
    data = InitialData.of(B)
    m0 = _pad(data, m0)
    muf = m0[: data.n_uf]
    Q = default_basepoint(data.n_uf) if Q is None else tuple(frac(x) for x in Q)
    if fan is None:
        fan = chamber_fan(data.exchange, depth)
    chamber = fan.locate(muf)
    if chamber is None:
        raise NotInChamberFan(f"{list(muf)} is not in a chamber found within depth {depth}")
    if not chamber.sequence:
        return ThetaFunction(data, m0, TruncatedSeries.one(data.n_uf, k))
    D = cluster_subdiagram(data.exchange, depth, k)
    path = chamber_path(data, chamber.sequence, Q, D)
    el = path_ordered_product(D, path, k).apply_monomial(m0)
    return ThetaFunction(data, m0, el.series)


# broken lines --------------------------------------------------------------------


@dataclass
class BrokenLine:
    m0: tuple
    endpoint: tuple
    bend_points: list = field(default_factory=list)
    segment_monomials: list = field(default_factory=list)
    exponent: tuple = ()

    @property
    def coefficient(self):
        return self.segment_monomials[-1][0]

    @property
    def final_monomial(self):
        return self.segment_monomials[-1][1]


def _check_endpoint(D: ScatteringDiagram, m0, Q):
    if not any(m0):
        raise ZeroExponent("theta functions need a nonzero exponent")
    for normal in D.normals():
        if dot(D.covector(normal), Q) == 0:
            raise NonGenericEndpoint(f"{list(Q)} lies on the hyperplane of {normal}")


def broken_lines(D: ScatteringDiagram, m0: Sequence[int], Q: Sequence, k: int | None = None) -> list[BrokenLine]:
    """All broken lines for m0 ending at Q whose final monomial has zeta-degree <= k."""
    data = D.data
    order = D.order if k is None else k
    m0 = _pad(data, m0)
    Q = tuple(frac(x) for x in Q)
    _check_endpoint(D, m0, Q)
    n = data.n_uf
    found = []

    def direction(nrem):
        ps = data.p_star(nrem)
        return tuple(a + b for a, b in zip(m0, ps))

    def trace(x, nrem, bends):
        m = direction(nrem)
        if not any(nrem):
            found.append(bends)
            return
        muf = m[:n]
        hits = {}
        for wall in D.walls:
            w = D.covector(wall.normal)
            wm = dot(w, muf)
            if wm == 0:
                continue
            s = Fraction(-dot(w, x)) / wm
            if s <= 0:
                continue
            y = tuple(norm(a + s * b) for a, b in zip(x, muf))
            if wall.cone.contains(y):
                hits.setdefault(s, []).append((wall, y))
        if not hits:
            return
        s = min(hits)
        group = hits[s]
        y = group[0][1]
        normal = group[0][0].normal
        for wall, _ in group:
            if wall.normal != normal or not wall.cone.in_relint(y):
                raise NonGenericEndpoint("a broken line meets a joint or a wall boundary")
        f = group[0][0].fn.truncate(order)
        for wall, _ in group[1:]:
            f = f.times(wall.fn.truncate(order))
        e = abs(norm(data.pair(m, data.n_prime(normal))))
        coeffs = f.power_coeffs(e)
        trace(y, nrem, bends)
        for j in range(1, len(coeffs)):
            a = coeffs[j]
            rest = tuple(r - j * c for r, c in zip(nrem, normal))
            if any(r < 0 for r in rest):
                break
            if a:
                trace(y, rest, bends + [(y, j, normal, a)])

    out = []
    for total in product(range(order + 1), repeat=n):
        if sum(total) > order:
            continue
        trace(Q, total, [])
        out += [_assemble(data, m0, Q, total, bends) for bends in found]
        found.clear()
    out.sort(key=lambda bl: (sum(bl.exponent), bl.exponent, [tuple(p) for p in bl.bend_points]))
    return out


def _assemble(data, m0, Q, total, bends) -> BrokenLine:
    """Forward-time description of a broken line found by the backward search."""
    steps = list(reversed(bends))
    nrem = tuple(total)
    for _, j, normal, _ in bends:
        nrem = tuple(r - j * c for r, c in zip(nrem, normal))
    c = Fraction(1)
    cur = tuple(nrem)
    mons = [(1, tuple(a + b for a, b in zip(m0, data.p_star(cur))))]
    points = []
    for y, j, normal, a in steps:
        cur = tuple(r + j * x for r, x in zip(cur, normal))
        c *= a
        points.append(y)
        mons.append((norm(c), tuple(a_ + b for a_, b in zip(m0, data.p_star(cur)))))
    return BrokenLine(tuple(m0), tuple(Q), points, mons, tuple(total))


def theta_broken(D: ScatteringDiagram, m0: Sequence[int], Q: Sequence, k: int | None = None) -> ThetaFunction:
    """Sum of the final monomials of all broken lines."""
    order = D.order if k is None else k
    terms: dict = {}
    for bl in broken_lines(D, m0, Q, order):
        terms[bl.exponent] = terms.get(bl.exponent, 0) + bl.coefficient
    return ThetaFunction(D.data, m0, TruncatedSeries(D.rank, order, terms))
