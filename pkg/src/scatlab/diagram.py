"""Walls, finite scattering diagrams, generic paths and path-ordered products.

Walls live in V* (f-coordinates over the unfrozen indices).  A wall with
normal n0 lies in the hyperplane ``covector(n0) . v = 0``.  A diagram is
always stored at an explicit truncation order k; walls whose function is
trivial modulo m^{k+1} are dropped on construction.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .autos import Automorphism, WallCrossing, compose_crossings
from .cones import Cone, angle_key, cross
from .errors import (
    BudgetExceeded,
    EndpointOnSupport,
    Inconsistent,
    NotGeneral,
    NotGeneric,
    OrderMismatch,
    RankUnsupported,
)
from .lattice import InitialData
from .linalg import dot, frac, norm, nullspace, primitive, sub
from .series import LaurentElement, TruncatedSeries, WallFunction


class WallType(enum.Enum):
    INCOMING = "incoming"
    OUTGOING = "outgoing"


@dataclass(frozen=True)
class Wall:
    cone: Cone
    fn: WallFunction

    @property
    def normal(self) -> tuple[int, ...]:
        return self.fn.normal

    def sort_key(self):
        return (self.fn.normal, self.cone.key, tuple(Fraction(c) for c in self.fn.coeffs))

    def truncate(self, order: int) -> "Wall":
        return Wall(self.cone, self.fn.truncate(order))

    def __repr__(self):
        gens = [list(g) for g in self.cone.generators]
        return f"Wall(normal={self.normal}, generators={gens}, coeffs={list(self.fn.coeffs)})"


def make_wall(data: InitialData, generators: Iterable[Sequence], normal: Sequence[int],
              coeffs: Iterable, order: int) -> Wall:
    cone = Cone.from_generators([tuple(frac(x) for x in g) for g in generators], data.n_uf)
    return Wall(cone, WallFunction(normal, coeffs, order))


def _check_wall(data: InitialData, wall: Wall) -> None:
    n = data.n_uf
    if len(wall.normal) != n or wall.cone.dim != n:
        raise ValueError("wall does not live over the unfrozen indices")
    if wall.cone.dimension != n - 1:
        raise ValueError(f"wall cone has dimension {wall.cone.dimension}, expected {n - 1}")
    w = data.covector(wall.normal)
    if any(dot(w, g) != 0 for g in wall.cone.generators):
        raise ValueError(f"wall cone is not contained in the hyperplane of {wall.normal}")


class ScatteringDiagram:
    """Finite list of walls at truncation order k over fixed initial data."""

    __slots__ = ("data", "order", "walls", "_cov")

    def __init__(self, data, order: int, walls: Iterable[Wall] = ()):
        data = InitialData.of(data)
        kept = []
        for w in walls:
            _check_wall(data, w)
            if w.fn.order != order:
                w = Wall(w.cone, WallFunction(w.fn.normal, w.fn.coeffs, order))
            if not w.fn.is_trivial():
                kept.append(w)
        kept.sort(key=Wall.sort_key)
        self.data = data
        self.order = order
        self.walls = tuple(kept)
        self._cov = {}

    def __eq__(self, other):
        return (isinstance(other, ScatteringDiagram) and self.data.exchange == other.data.exchange
                and self.order == other.order and self.walls == other.walls)

    def __hash__(self):
        return hash((self.data.exchange, self.order, self.walls))

    def __len__(self):
        return len(self.walls)

    def __iter__(self):
        return iter(self.walls)

    def __repr__(self):
        return f"ScatteringDiagram(order={self.order}, walls={len(self.walls)})"

    @property
    def rank(self) -> int:
        return self.data.n_uf

    def covector(self, normal) -> tuple:
        if normal not in self._cov:
            self._cov[normal] = self.data.covector(normal)
        return self._cov[normal]

    def with_walls(self, extra: Iterable[Wall]) -> "ScatteringDiagram":
        return ScatteringDiagram(self.data, self.order, list(self.walls) + list(extra))

    def truncate(self, order: int) -> "ScatteringDiagram":
        if order > self.order:
            raise OrderMismatch(f"cannot raise truncation order {self.order} to {order}")
        return ScatteringDiagram(self.data, order, [w.truncate(order) for w in self.walls])

    def normals(self) -> list[tuple]:
        return sorted({w.normal for w in self.walls})

    def walls_containing(self, p: Sequence) -> list[Wall]:
        return [w for w in self.walls if w.cone.contains(p)]

    def on_support(self, p: Sequence) -> bool:
        return any(w.cone.contains(p) for w in self.walls)


def ramparts(D: ScatteringDiagram) -> dict:
    """Walls grouped by primitive normal: {n0: [cones]}."""
    out: dict = {}
    for w in D.walls:
        out.setdefault(w.normal, []).append(w.cone)
    return dict(sorted(out.items()))


def classify_wall(data, wall: Wall) -> WallType:
    data = InitialData.of(data)
    p = data.p_star_uf(wall.normal)
    return WallType.INCOMING if wall.cone.contains(p) else WallType.OUTGOING


def cross_wall(data, m: Sequence[int], wall: Wall, sign: int, k: int | None = None) -> LaurentElement:
    """z^m -> z^m f^{<m, sign n0'>}, truncated at order k."""
    data = InitialData.of(data)
    order = wall.fn.order if k is None else k
    return WallCrossing(data, wall.fn.truncate(order) if order <= wall.fn.order else wall.fn,
                        sign, order).apply_monomial(m)


# paths -----------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewisePath:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(tuple(frac(x) for x in v) for v in self.vertices)
        if len(vs) < 2:
            raise ValueError("a path needs at least two vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise ValueError("consecutive vertices must be distinct")
        object.__setattr__(self, "vertices", vs)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def segments(self):
        return list(zip(self.vertices, self.vertices[1:]))


@dataclass
class Crossing:
    time: Fraction
    point: tuple
    walls: list = field(default_factory=list)
    sign: int = 1

    @property
    def normal(self):
        return self.walls[0].normal


def _segment_meets(cone: Cone, a, b) -> bool:
    """Does the closed segment [a, b] meet the cone (assumed in the cone's span)?"""
    lo, hi = Fraction(0), Fraction(1)
    v = sub(b, a)
    for w in cone.facets:
        wa, wv = Fraction(dot(w, a)), Fraction(dot(w, v))
        if wv == 0:
            if wa < 0:
                return False
        elif wv > 0:
            lo = max(lo, -wa / wv)
        else:
            hi = min(hi, -wa / wv)
        if lo > hi:
            return False
    return True


def path_crossings(D: ScatteringDiagram, path: PiecewisePath) -> list[Crossing]:
    """Wall crossings of a path in time order, grouped by simultaneity.

    Raises NotGeneric if the path starts or ends on a wall, touches a wall at a
    vertex, runs inside a wall, meets a relative wall boundary, or passes a
    point where walls with different normals meet.
    """
    found: dict = {}
    for s, (a, b) in enumerate(path.segments()):
        v = sub(b, a)
        for wall in D.walls:
            w = D.covector(wall.normal)
            wa, wb = dot(w, a), dot(w, b)
            if wa == 0 and wb == 0:
                if _segment_meets(wall.cone, a, b):
                    raise NotGeneric("path runs inside a wall", wall=wall, segment=s)
                continue
            if wa == 0 or wb == 0:
                x = a if wa == 0 else b
                if wall.cone.contains(x):
                    raise NotGeneric("path vertex lies on a wall", wall=wall, segment=s)
                continue
            if (wa > 0) == (wb > 0):
                continue
            t = Fraction(wa) / (Fraction(wa) - Fraction(wb))
            x = tuple(norm(ai + t * vi) for ai, vi in zip(a, v))
            if not wall.cone.contains(x):
                continue
            if not wall.cone.in_relint(x):
                raise NotGeneric("path meets the relative boundary of a wall", wall=wall, segment=s)
            key = s + t
            sign = 1 if dot(w, v) < 0 else -1
            c = found.setdefault(key, Crossing(key, x, [], sign))
            if c.walls and c.walls[0].normal != wall.normal:
                raise NotGeneric("path passes through a joint", wall=wall, segment=s)
            c.walls.append(wall)
    return [found[t] for t in sorted(found)]


def _merged_function(walls: Sequence[Wall], order: int) -> WallFunction:
    f = walls[0].fn.truncate(order)
    for w in walls[1:]:
        f = f.times(w.fn.truncate(order))
    return f


def path_ordered_product(D: ScatteringDiagram, path: PiecewisePath, k: int | None = None) -> Automorphism:
    """Composite of the wall crossings of a generic path, first crossing applied first."""
    order = D.order if k is None else k
    if order > D.order:
        raise OrderMismatch(f"diagram is only known modulo m^{D.order + 1}")
    crossings = [WallCrossing(D.data, _merged_function(c.walls, order), c.sign, order)
                 for c in path_crossings(D, path)]
    return compose_crossings(D.data, order, crossings)


def _rand_rational(rng: random.Random, scale, den: int = 997) -> Fraction:
    return Fraction(rng.randint(-den, den), den) * scale


def make_generic_path(D: ScatteringDiagram, p: Sequence, q: Sequence, seed: int = 0,
                      budget: int = 500) -> PiecewisePath:
    """A generic path from p to q: the direct segment if generic, else three
    segments through seeded random rational waypoints."""
    p = tuple(frac(x) for x in p)
    q = tuple(frac(x) for x in q)
    for x in (p, q):
        if D.on_support(x):
            raise EndpointOnSupport(f"endpoint {x} lies on a wall")
    if p != q:
        try:
            path = PiecewisePath((p, q))
            path_crossings(D, path)
            return path
        except NotGeneric:
            pass
    rng = random.Random(seed)
    scale = max([abs(Fraction(x)) for x in p + q] + [Fraction(1)])
    for _ in range(budget):
        w1 = tuple(norm(Fraction(2 * a + b, 3) + _rand_rational(rng, scale)) for a, b in zip(p, q))
        w2 = tuple(norm(Fraction(a + 2 * b, 3) + _rand_rational(rng, scale)) for a, b in zip(p, q))
        if len({p, w1, w2, q}) < 4:
            continue
        path = PiecewisePath((p, w1, w2, q))
        try:
            path_crossings(D, path)
        except NotGeneric:
            continue
        return path
    raise NotGeneric("no generic path found within budget")


# joints and consistency --------------------------------------------------------


def _plane_basis(p: Sequence, n: int) -> list[tuple]:
    """Two vectors spanning a complement of the joint through p (whole plane in rank 2)."""
    if n == 2:
        return [(1, 0), (0, 1)]
    return nullspace([p], n)


def _tangent_contains(cone: Cone, p: Sequence, w: Sequence) -> bool:
    """p + t w lies in the cone for all small t > 0."""
    if any(dot(e, w) != 0 for e in cone.equations):
        return False
    for a in cone.facets:
        ap = dot(a, p)
        if ap < 0 or (ap == 0 and dot(a, w) < 0):
            return False
    return True


def local_loop_crossings(D: ScatteringDiagram, p: Sequence, order: int) -> list[WallCrossing]:
    """Crossings of a small counterclockwise loop around the joint through p."""

    n = D.rank
    u1, u2 = _plane_basis(p, n)
    by_dir: dict = {}
    for wall in D.walls:
        if not wall.cone.contains(p):
            continue
        c = D.covector(wall.normal)
        x, y = -dot(c, u2), dot(c, u1)
        for sx, sy in ((x, y), (-x, -y)):
            amb = tuple(sx * a + sy * b for a, b in zip(u1, u2))
            if not _tangent_contains(wall.cone, p, amb):
                continue
            g = _prim2(sx, sy)
            vel = tuple(-sy * a + sx * b for a, b in zip(u1, u2))
            sign = 1 if dot(c, vel) < 0 else -1
            by_dir.setdefault(g, (sign, []))[1].append(wall)
    out = []
    for d in sorted(by_dir, key=angle_key):
        sign, walls = by_dir[d]
        out.append(WallCrossing(D.data, _merged_function(walls, order), sign, order))
    return out


def _prim2(x, y):
    return primitive((x, y))


def local_loop_product(D: ScatteringDiagram, p: Sequence, order: int | None = None) -> Automorphism:
    order = D.order if order is None else order
    return compose_crossings(D.data, order, local_loop_crossings(D, p, order))


def joints(D: ScatteringDiagram) -> list[tuple]:
    """Representative points of the codimension-2 joints of the wall arrangement."""

    n = D.rank
    if not D.walls or n < 2:
        return []
    if n == 2:
        return [(0, 0)]
    if n != 3:
        raise RankUnsupported("joint enumeration is implemented for rank at most 3")
    cands = set()
    covs = sorted({D.covector(w.normal) for w in D.walls})
    for i, a in enumerate(covs):
        for b in covs[i + 1:]:
            for r in nullspace([a, b], 3):
                cands.add(primitive(r))
                cands.add(primitive([-x for x in r]))
    for w in D.walls:
        for g in w.cone.generators:
            cands.add(primitive(g))
    return sorted(c for c in cands if D.on_support(c))


@dataclass
class ConsistencyReport:
    passed: bool
    joints_checked: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"PASS ({self.joints_checked} joints)"
        return f"FAIL at {len(self.failures)} of {self.joints_checked} joints: " + ", ".join(
            f"{list(p)} (degree {d})" for p, d in self.failures)


def first_nontrivial_degree(a: Automorphism) -> int | None:
    degs = [min((sum(e) for e in (g - 1).terms), default=None) for g in a.images]
    degs = [d for d in degs if d is not None]
    return min(degs) if degs else None


def check_consistency(D: ScatteringDiagram, k: int | None = None, loop_budget: int = 10000) -> ConsistencyReport:
    """Every small loop around every joint has trivial path-ordered product mod m^{k+1}."""

    order = D.order if k is None else k
    pts = joints(D)
    if len(pts) > loop_budget:
        raise BudgetExceeded(f"{len(pts)} joints exceed the loop budget {loop_budget}")
    failures = []
    for p in pts:
        prod = local_loop_product(D, p, order)
        if not prod.is_identity():
            failures.append((p, first_nontrivial_degree(prod)))
    return ConsistencyReport(not failures, len(pts), failures)


# general points, equivalence, minimal support ------------------------------------


def _function_at(diagrams: Sequence[ScatteringDiagram], normal, p, order: int) -> WallFunction:
    f = WallFunction(normal, [], order)
    for D in diagrams:
        for w in D.walls:
            if w.normal == normal and w.cone.contains(p):
                f = f.times(w.fn.truncate(order))
    return f


def f_general_point(D: ScatteringDiagram, p: Sequence, k: int | None = None):
    """Product of the functions of all walls containing p, as a truncated series."""

    order = D.order if k is None else k
    p = tuple(frac(x) for x in p)
    hits = D.walls_containing(p)
    normals = {w.normal for w in hits}
    if len(normals) > 1:
        raise NotGeneral(f"{list(p)} lies on walls with normals {sorted(normals)}")
    if not hits:
        return TruncatedSeries.one(D.rank, order)
    return _function_at([D], hits[0].normal, p, order).series()


def sector_samples(directions: Iterable[Sequence]) -> list[tuple]:
    """One point in each open sector cut out of the plane by the given rays."""

    dirs = sorted({primitive(d) for d in directions}, key=angle_key)
    if not dirs:
        return [(1, 0)]
    out = []
    for i, u in enumerate(dirs):
        v = dirs[(i + 1) % len(dirs)]
        out.append(_between(u, v))
    return out


def _between(u, v):

    if len(set([u, v])) == 1:
        return (-u[0], -u[1])
    c = cross(u, v)
    if c > 0:
        return (u[0] + v[0], u[1] + v[1])
    if c < 0:
        return (-u[0] - v[0], -u[1] - v[1])
    return (-u[1], u[0])


def _hyperplane_frame(D_list, normal):
    """Basis of the hyperplane of ``normal`` and cut directions inside it (rank 3)."""
    data = D_list[0].data
    c = data.covector(normal)
    b1, b2 = nullspace([c], 3)
    cuts = set()
    for D in D_list:
        for w in D.walls:
            covs = list(w.cone.facets) if w.normal == normal else [D.covector(w.normal)]
            for a in covs:
                al, be = dot(a, b1), dot(a, b2)
                if al == 0 and be == 0:
                    continue
                cuts.add((w.normal != normal, _prim2(-be, al)))
                cuts.add((w.normal != normal, _prim2(be, -al)))
    return b1, b2, cuts


def _lift(b1, b2, xy):
    return tuple(norm(xy[0] * a + xy[1] * b) for a, b in zip(b1, b2))


def _sample_points(D_list, normal) -> list[tuple]:

    data = D_list[0].data
    n = data.n_uf
    if n == 1:
        return [(0,)]
    if n == 2:
        b = nullspace([data.covector(normal)], 2)[0]
        return [tuple(b), tuple(-x for x in b)]
    if n != 3:
        raise RankUnsupported("hyperplane subdivision is implemented for rank at most 3")
    b1, b2, cuts = _hyperplane_frame(D_list, normal)
    return [_lift(b1, b2, s) for s in sector_samples(d for _, d in cuts)]


def equivalent(D: ScatteringDiagram, D2: ScatteringDiagram, k: int | None = None) -> bool:
    """Compare f_p on one sample point per region of every wall hyperplane."""
    order = min(D.order, D2.order) if k is None else k
    if D.data.exchange != D2.data.exchange:
        raise ValueError("diagrams over different initial data")
    for normal in sorted(set(D.normals()) | set(D2.normals())):
        for p in _sample_points([D, D2], normal):
            if _function_at([D], normal, p, order) != _function_at([D2], normal, p, order):
                return False
    return True


def minimal_support(D: ScatteringDiagram, k: int | None = None, check: bool = True) -> ScatteringDiagram:
    """Equivalent diagram whose walls all carry nontrivial f_p, one per region."""

    order = D.order if k is None else k
    if check:
        rep = check_consistency(D, order)
        if not rep:
            raise Inconsistent(str(rep))
    n = D.rank
    if n > 3:
        raise RankUnsupported("minimal support is implemented for rank at most 3")
    walls = []
    for normal in D.normals():
        if n <= 2:
            pts = _sample_points([D], normal)
            fs = [_function_at([D], normal, p, order) for p in pts]
            if n == 2 and fs[0] == fs[1]:
                if not fs[0].is_trivial():
                    walls.append(Wall(Cone.from_generators(pts, n), fs[0]))
                continue
            for p, f in zip(pts, fs):
                if not f.is_trivial():
                    walls.append(Wall(Cone.from_generators([p], n), f))
            continue
        b1, b2, cuts = _hyperplane_frame([D], normal)
        fine = sorted({d for _, d in cuts}, key=angle_key)
        lift = lambda xy: _lift(b1, b2, xy)
        if not fine:
            f = _function_at([D], normal, lift((1, 0)), order)
            if not f.is_trivial():
                walls.append(Wall(Cone.from_generators([lift(v) for v in ((1, 0), (0, 1), (-1, 0), (0, -1))], 3), f))
            continue
        fvals = {}
        for i, u in enumerate(fine):
            v = fine[(i + 1) % len(fine)]
            fvals[u] = _function_at([D], normal, lift(_between(u, v)), order)
        stable = {d for other, d in cuts if other}
        for i, u in enumerate(fine):
            prev = fine[i - 1]
            if fvals[prev] != fvals[u]:
                stable.add(u)
        if not stable:
            f = fvals[fine[0]]
            if not f.is_trivial():
                walls.append(Wall(Cone.from_generators([lift(v) for v in ((1, 0), (0, 1), (-1, 0), (0, -1))], 3), f))
            continue
        srt = sorted(stable, key=angle_key)
        for i, u in enumerate(srt):
            v = srt[(i + 1) % len(srt)]
            f = fvals[u]
            if f.is_trivial():
                continue
            for piece in _convex_pieces(u, v):
                walls.append(Wall(Cone.from_generators([lift(x) for x in piece], 3), f))
    return ScatteringDiagram(D.data, order, walls)


def _convex_pieces(u, v) -> list[list]:
    """Split the counterclockwise sector from u to v into convex cones (generator lists)."""

    neg = (-u[0], -u[1])
    rot = (-u[1], u[0])
    if u == v:
        return [[u, rot, neg], [neg, (-rot[0], -rot[1]), u]]
    c = cross(u, v)
    if c > 0:
        return [[u, v]]
    if c == 0:
        return [[u, rot, v]]
    return [[u, rot, neg], [neg, v]]
