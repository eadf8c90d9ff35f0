"""Exact rational polyhedral cones.

Geometry here uses the plain dot product on coordinate vectors; callers
translate the lattice pairing into covectors first (see
``InitialData.covector``).  A cone keeps both descriptions:

* V-form: extreme rays (taken orthogonal to the lineality space) plus a
  basis of the lineality space;
* H-form: equations ``w . v = 0`` and inward facet normals ``w . v >= 0``.

Both forms are canonical, so cones compare and hash by value.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import dot, frac, nullspace, norm, primitive, rank, rref, solve_square


def _canon_space(vectors: Sequence[Sequence]) -> tuple:
    red, _ = rref(vectors)
    return tuple(primitive(r) for r in red)


def _project_out(v: Sequence, lin: Sequence[Sequence]) -> tuple:
    """Component of v orthogonal to span(lin)."""
    if not lin:
        return tuple(v)
    gram = [[dot(a, b) for b in lin] for a in lin]
    rhs = [dot(a, v) for a in lin]
    c = solve_square(gram, rhs)
    out = [Fraction(x) for x in v]
    for ci, a in zip(c, lin):
        for j in range(len(out)):
            out[j] -= ci * a[j]
    return tuple(norm(x) for x in out)


def _h_from_gens(dim: int, gens: Sequence[Sequence]) -> tuple[tuple, tuple]:
    """Equations and facet normals of the cone spanned by ``gens``."""
    gens = [tuple(g) for g in gens if any(x != 0 for x in g)]
    eqs = _canon_space(nullspace(gens, dim)) if gens else _canon_space(
        [tuple(int(i == j) for j in range(dim)) for i in range(dim)])
    if not gens:
        return eqs, ()
    basis, _ = rref(gens)
    r = len(basis)
    facets = set()
    distinct = list(dict.fromkeys(gens))
    for subset in combinations(distinct, r - 1):
        if r > 1 and rank(subset) != r - 1:
            continue
        rows = [[dot(b, s) for b in basis] for s in subset]
        alpha = nullspace(rows, r) if rows else [tuple(int(i == j) for j in range(r)) for i in range(r)]
        if len(alpha) != 1:
            continue
        w = [Fraction(0)] * dim
        for a, b in zip(alpha[0], basis):
            for j in range(dim):
                w[j] += a * Fraction(b[j])
        vals = [dot(w, g) for g in gens]
        if all(x >= 0 for x in vals):
            facets.add(primitive(w))
        elif all(x <= 0 for x in vals):
            facets.add(primitive([-x for x in w]))
    return eqs, tuple(sorted(facets))


def _v_from_h(dim: int, eqs: Sequence[Sequence], ineqs: Sequence[Sequence]) -> tuple[tuple, tuple]:
    """Extreme rays (orthogonal to the lineality space) and lineality basis."""
    eqs = [tuple(e) for e in eqs if any(x != 0 for x in e)]
    ineqs = list(dict.fromkeys(tuple(w) for w in ineqs if any(x != 0 for x in w)))
    lin = _canon_space(nullspace(eqs + ineqs, dim)) if (eqs or ineqs) else _canon_space(
        [tuple(int(i == j) for j in range(dim)) for i in range(dim)])
    base = eqs + list(lin)
    base_rank = rank(base) if base else 0
    need = dim - 1 - base_rank
    rays = set()
    if need >= 0:
        for subset in combinations(ineqs, need):
            rows = base + list(subset)
            if rows and rank(rows) != dim - 1:
                continue
            ns = nullspace(rows, dim) if rows else []
            if len(ns) != 1:
                continue
            r = ns[0]
            vals = [dot(w, r) for w in ineqs]
            if all(x >= 0 for x in vals):
                rays.add(primitive(_project_out(r, lin)))
            elif all(x <= 0 for x in vals):
                rays.add(primitive(_project_out([-x for x in r], lin)))
    return tuple(sorted(rays)), lin


class Cone:
    """Closed rational polyhedral cone in Q^dim."""

    __slots__ = ("dim", "rays", "lineality", "equations", "facets", "_key")

    def __init__(self, dim, rays, lineality, equations, facets):
        self.dim = dim
        self.rays = tuple(rays)
        self.lineality = tuple(lineality)
        self.equations = tuple(equations)
        self.facets = tuple(facets)
        self._key = (dim, self.rays, self.lineality)

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], dim: int | None = None) -> "Cone":
        gens = [tuple(frac(x) for x in g) for g in gens]
        if dim is None:
            if not gens:
                raise ValueError("dimension required for the zero cone")
            dim = len(gens[0])
        eqs, facets = _h_from_gens(dim, gens)
        rays, lin = _v_from_h(dim, eqs, facets)
        return cls(dim, rays, lin, eqs, facets)

    @classmethod
    def from_constraints(cls, dim: int, equations=(), inequalities=()) -> "Cone":
        rays, lin = _v_from_h(dim, [tuple(e) for e in equations], [tuple(w) for w in inequalities])
        gens = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
        eqs, facets = _h_from_gens(dim, gens)
        return cls(dim, rays, lin, eqs, facets)

    @classmethod
    def whole(cls, dim: int) -> "Cone":
        return cls.from_constraints(dim)

    @classmethod
    def zero(cls, dim: int) -> "Cone":
        return cls.from_generators([], dim)

    @classmethod
    def ray(cls, v: Sequence) -> "Cone":
        return cls.from_generators([v])

    @classmethod
    def line(cls, v: Sequence) -> "Cone":
        return cls.from_generators([v, [-x for x in v]])

    # identity --------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"

    @property
    def key(self):
        return self._key

    @property
    def dimension(self) -> int:
        return self.dim - len(self.equations)

    @property
    def generators(self) -> tuple:
        return self.rays + self.lineality + tuple(tuple(-x for x in l) for l in self.lineality)

    def is_full(self) -> bool:
        return self.dimension == self.dim

    def is_pointed(self) -> bool:
        return not self.lineality

    # membership --------------------------------------------------------------

    def contains(self, v: Sequence) -> bool:
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(w, v) >= 0 for w in self.facets))

    def in_relint(self, v: Sequence) -> bool:
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(w, v) > 0 for w in self.facets))

    def on_relative_boundary(self, v: Sequence) -> bool:
        return self.contains(v) and not self.in_relint(v)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def relint_point(self) -> tuple:
        p = [Fraction(0)] * self.dim
        for g in self.rays + self.lineality:
            for j in range(self.dim):
                p[j] += g[j]
        return tuple(norm(x) for x in p)

    # operations ----------------------------------------------------------------

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_constraints(self.dim, self.equations + other.equations,
                                     self.facets + other.facets)

    def halfspace(self, w: Sequence) -> "Cone":
        """Intersection with {v : w . v >= 0}."""
        return Cone.from_constraints(self.dim, self.equations, self.facets + (tuple(w),))

    def with_equation(self, w: Sequence) -> "Cone":
        return Cone.from_constraints(self.dim, self.equations + (tuple(w),), self.facets)

    def linear_image(self, m: Sequence[Sequence]) -> "Cone":
        """Image under v -> v * m (row vectors)."""
        cols = list(zip(*m))
        return Cone.from_generators([tuple(dot(g, c) for c in cols) for g in self.generators],
                                    len(cols))

    def sign_on(self, w: Sequence) -> int | None:
        """+1/-1 if w . v has one sign on the cone (0 if identically zero), None if it changes sign."""
        vals = [dot(w, g) for g in self.generators]
        pos = any(x > 0 for x in vals)
        neg = any(x < 0 for x in vals)
        if pos and neg:
            return None
        return 1 if pos else (-1 if neg else 0)

    def facet_cones(self) -> list["Cone"]:
        out = []
        for w in self.facets:
            gens = [g for g in self.generators if dot(w, g) == 0]
            out.append(Cone.from_generators(gens, self.dim))
        return out

    def faces(self) -> set["Cone"]:
        """All faces, including the cone itself."""
        seen = {self}
        stack = [self]
        while stack:
            c = stack.pop()
            for f in c.facet_cones():
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
        return seen

    def smallest_face_containing(self, other: "Cone") -> "Cone":
        tight = [w for w in self.facets if all(dot(w, g) == 0 for g in other.generators)]
        if not tight:
            return self
        return Cone.from_constraints(self.dim, self.equations + tuple(tight), self.facets)

    def is_face(self, other: "Cone") -> bool:
        """True if ``other`` is a face of this cone."""
        return self.contains_cone(other) and self.smallest_face_containing(other) == other


def angle_key(v: Sequence):
    """Sort key for counterclockwise angle in the plane, starting at the positive x-axis."""
    x, y = Fraction(v[0]), Fraction(v[1])
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return half, _AngleCmp(x, y)


class _AngleCmp:
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x, self.y = x, y

    def __lt__(self, other):
        return self.x * other.y - self.y * other.x > 0

    def __eq__(self, other):
        return self.x * other.y - self.y * other.x == 0


def sort_by_angle(vectors: Iterable[Sequence]) -> list:
    return sorted(vectors, key=angle_key)


def cross(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]
