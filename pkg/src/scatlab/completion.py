"""Order-by-order completion of rank-2 cluster scattering diagrams."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cones import Cone
from .diagram import PiecewisePath, ScatteringDiagram, Wall, path_ordered_product
from .errors import Inconsistent, NotRank2
from .lattice import InitialData
from .linalg import dot, norm, primitive
from .series import WallFunction

_OCTAGON = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
_CACHE: dict = {}


@dataclass(frozen=True)
class CensusRow:
    degree: int
    normal: tuple
    ell: int
    coeff: object
    new: bool


def initial_walls(data: InitialData, order: int) -> list[Wall]:
    """The incoming walls (e_i^perp, 1 + zeta_i), i unfrozen."""
    n = data.n_uf
    walls = []
    for i in range(n):
        gens = []
        for j in range(n):
            if j != i:
                ej = tuple(int(t == j) for t in range(n))
                gens += [ej, tuple(-x for x in ej)]
        ei = tuple(int(t == i) for t in range(n))
        walls.append(Wall(Cone.from_generators(gens, n), WallFunction(ei, [1], order)))
    return walls


def outgoing_direction(data: InitialData, n0) -> tuple:
    return tuple(-x for x in data.p_star_uf(n0))


def _octagon(diagram_normals, data, rng):
    covs = [data.covector(n) for n in diagram_normals]
    verts = []
    for v in _OCTAGON:
        while True:
            p = tuple(norm(x + Fraction(rng.randint(-97, 97), 1009)) for x in v)
            if all(dot(c, p) != 0 for c in covs):
                break
        verts.append(p)
    return PiecewisePath(tuple(verts) + (verts[0],))


def _build(data, order, rays):
    walls = initial_walls(data, order)
    for n0, cs in rays.items():
        walls.append(Wall(Cone.from_generators([outgoing_direction(data, n0)], 2),
                          WallFunction(n0, cs, order)))
    return ScatteringDiagram(data, order, walls)


def _complete(data: InitialData, k: int, seed: int = 0):
    rng = random.Random(seed)
    rays: dict = {}
    events = []
    for d in range(1, k + 1):
        D = _build(data, k, rays)
        path = _octagon(D.normals(), data, rng)
        loop = path_ordered_product(D, path, d)
        discrepancy: dict = {}
        for i, g in enumerate(loop.images):
            for e, c in g.terms.items():
                deg = sum(e)
                if deg == 0:
                    continue
                if deg < d:
                    raise Inconsistent(f"loop is nontrivial in degree {deg} < {d}")
                discrepancy.setdefault(e, {})[i] = c
        for n in sorted(discrepancy):
            n0 = primitive(n)
            ell = sum(n) // sum(n0)
            direction = outgoing_direction(data, n0)
            vel = (-direction[1], direction[0])
            s = 1 if dot(data.covector(n0), vel) < 0 else -1
            nprime = data.n_prime(n0)
            delta = None
            for i in range(2):
                pair = Fraction(nprime[i], data.d[i])
                a = discrepancy[n].get(i, 0)
                if pair == 0:
                    if a != 0:
                        raise Inconsistent(f"discrepancy at {n} is not a wall-crossing term")
                    continue
                cand = norm(-Fraction(a) / (s * pair))
                if delta is None:
                    delta = cand
                elif delta != cand:
                    raise Inconsistent(f"discrepancy at {n} is not a wall-crossing term")
            if not delta:
                continue
            is_new = n0 not in rays
            cs = list(rays.get(n0, [0] * (k // sum(n0))))
            cs[ell - 1] = norm(cs[ell - 1] + delta)
            rays[n0] = cs
            events.append(CensusRow(d, n0, ell, cs[ell - 1], is_new))
    return _build(data, k, rays), events


def _lookup(B, k: int):
    data = InitialData.of(B)
    if data.n_uf != 2:
        raise NotRank2(f"expected 2 unfrozen indices, got {data.n_uf}")
    key = data.b
    hit = _CACHE.get(key)
    if hit is None or hit[0] < k:
        square = InitialData.of([list(r) for r in key])
        D, events = _complete(square, k)
        _CACHE[key] = hit = (k, D, events)
    return data, hit


def cluster_scatter_rank2(B, k: int) -> ScatteringDiagram:
    """Consistent rank-2 cluster scattering diagram modulo m^{k+1}.

    Wall functions depend only on the square block, so the computation is
    shared between extensions of the same B by different frozen rows.
    """
    data, (order, D, _) = _lookup(B, k)
    walls = [Wall(w.cone, w.fn.truncate(k)) for w in D.walls]
    return ScatteringDiagram(data, k, walls)


def wall_census(B, k: int) -> list[CensusRow]:
    """Per-degree record of the coefficient updates made by the completion."""
    _, (order, D, events) = _lookup(B, k)
    return [e for e in events if e.degree <= k]


def census_tsv(rows) -> str:
    lines = ["degree\tnormal\tell\tcoeff\tnew"]
    for r in rows:
        lines.append(f"{r.degree}\t{','.join(map(str, r.normal))}\t{r.ell}\t{r.coeff}\t{int(r.new)}")
    return "\n".join(lines) + "\n"
