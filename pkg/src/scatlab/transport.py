"""Wall transport under mutation, chamber fans and cluster-chamber subdiagrams."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cones import Cone
from .diagram import ScatteringDiagram, Wall, equivalent
from .errors import ExponentLeavesCone, IndexOutOfRange, NotInNPlus, NotGeneral
from .lattice import InitialData, eta, eta_step_matrix, mutate_matrix, mutate_once
from .linalg import dot, primitive
from .series import WallFunction


def exponent_matrix(b, k: int, positive: bool) -> tuple:
    """J_k + [(-B^T)^{k.}]_+ (positive side) or J_k + [(B^T)^{k.}]_+ (negative side), acting on columns."""
    n = len(b)
    s = -1 if positive else 1
    rows = []
    for i in range(n):
        if i == k:
            rows.append(tuple(-1 if j == k else max(s * b[j][k], 0) for j in range(n)))
        else:
            rows.append(tuple(int(i == j) for j in range(n)))
    return tuple(rows)


@dataclass(frozen=True)
class TransportMaps:
    k: int
    side_neg: tuple
    side_pos: tuple
    exp_neg: tuple
    exp_pos: tuple

    @classmethod
    def of(cls, b, k: int) -> "TransportMaps":
        n = len(b)
        if not 0 <= k < n:
            raise IndexOutOfRange(f"mutation index {k} out of range")
        return cls(k, eta_step_matrix(b, k, False), eta_step_matrix(b, k, True),
                   exponent_matrix(b, k, False), exponent_matrix(b, k, True))


def _apply_columns(t, n):
    return tuple(sum(t[i][j] * n[j] for j in range(len(n))) for i in range(len(t)))


def apply_M_k(D: ScatteringDiagram, k: int) -> ScatteringDiagram:
    """Transport every wall of D to a diagram over mu_k of the initial data.

    Walls are split along e_k^perp first.  Because the exponent maps change
    degrees, the result is only exact modulo m^{j+1} for
    j <= order / (1 + max_j |b_jk|); callers needing a fixed order should
    transport a diagram computed at that higher order and truncate.
    """
    data = D.data
    n = data.n_uf
    maps = TransportMaps.of(data.b, k)
    ek = tuple(int(i == k) for i in range(n))
    neg = tuple(-x for x in ek)
    out = []
    for wall in D.walls:
        cone = wall.cone
        if all(g[k] == 0 for g in cone.generators):
            out.append(wall)
            continue
        for side, halfspace in ((False, neg), (True, ek)):
            part = cone.halfspace(halfspace)
            if part.dimension != n - 1:
                continue
            m = maps.side_pos if side else maps.side_neg
            t = maps.exp_pos if side else maps.exp_neg
            normal = _apply_columns(t, wall.normal)
            try:
                fn = WallFunction(normal, wall.fn.coeffs, wall.fn.order)
            except NotInNPlus as exc:
                raise ExponentLeavesCone(f"normal {wall.normal} maps to {normal}") from exc
            out.append(Wall(part.linear_image(m), fn))
    return ScatteringDiagram(data.mutate([k]), D.order, out)


def transport_order(b, k: int, order: int) -> int:
    """Order at which to compute a diagram so that its transport is exact to ``order``."""
    return order * (1 + max(abs(b[j][k]) for j in range(len(b))))


def verify_mutation_equiv(B, k: int, order: int) -> bool:
    """Rank 2: transport of the order-K completion equals the completion over mu_k(B)."""
    from .completion import cluster_scatter_rank2

    data = InitialData.of(B)
    big = transport_order(data.b, k, order)
    moved = apply_M_k(cluster_scatter_rank2(data.exchange, big), k).truncate(order)
    target = cluster_scatter_rank2(data.exchange.mutate([k]), order)
    return equivalent(moved, target, order)


# chamber fan ----------------------------------------------------------------------


def chamber_generators(b, seq) -> list[tuple]:
    """Images of the f_i under the inverse mutation map: generators of the chamber for seq."""
    n = len(b)
    cur = mutate_matrix(b, seq)
    gens = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for k in reversed(seq):
        signs = {(g[k] > 0) - (g[k] < 0) for g in gens} - {0}
        if len(signs) > 1:
            raise NotGeneral(f"chamber generators are not sign-coherent at index {k}")
        gens = [eta(cur, [k], g) for g in gens]
        cur = mutate_once(cur, k)
    return gens


def facet_normal(data: InitialData, w) -> tuple:
    """Primitive vector of N^+ whose hyperplane is the facet covector w."""
    n = primitive([w[i] * data.d[i] for i in range(len(w))])
    if all(x <= 0 for x in n):
        n = tuple(-x for x in n)
    if any(x < 0 for x in n):
        raise NotInNPlus(f"facet normal {n} is not sign-coherent")
    return n


@dataclass
class Chamber:
    sequence: tuple
    cone: Cone
    facet_normals: tuple


@dataclass
class ChamberFan:
    data: InitialData
    depth: int
    chambers: list = field(default_factory=list)
    adjacency: list = field(default_factory=list)
    closed: bool = False
    frontier: int = 0

    def __len__(self):
        return len(self.chambers)

    def cones(self) -> list[Cone]:
        return [c.cone for c in self.chambers]

    def locate(self, v) -> Chamber | None:
        for c in self.chambers:
            if c.cone.contains(v):
                return c
        return None

    def walls(self):
        """Distinct facets with their normals, in a deterministic order."""
        seen = {}
        for c in self.chambers:
            for w, facet in zip(c.cone.facets, c.cone.facet_cones()):
                seen.setdefault(facet.key, (facet, facet_normal(self.data, w)))
        return [seen[key] for key in sorted(seen)]

    def all_facets_shared(self) -> bool:
        count: dict = {}
        for c in self.chambers:
            for facet in c.cone.facet_cones():
                count[facet.key] = count.get(facet.key, 0) + 1
        return all(v == 2 for v in count.values())


def _make_chamber(data, seq):
    gens = chamber_generators(data.b, seq)
    cone = Cone.from_generators(gens, data.n_uf)
    return Chamber(tuple(seq), cone, tuple(facet_normal(data, w) for w in cone.facets))


def chamber_fan(B, depth: int) -> ChamberFan:
    """Breadth-first search over mutation sequences of length at most ``depth``."""
    data = InitialData.of(B)
    n = data.n_uf
    fan = ChamberFan(data, depth)
    start = _make_chamber(data, ())
    fan.chambers.append(start)
    index = {start.cone.key: 0}
    level = [0]
    adj = set()
    for q in range(depth + 1):
        fresh = []
        for ci in level:
            seq = fan.chambers[ci].sequence
            for k in range(n):
                if seq and seq[-1] == k:
                    continue
                ch = _make_chamber(data, seq + (k,))
                key = ch.cone.key
                if key not in index:
                    if q == depth:
                        fan.frontier += 1
                        continue
                    index[key] = len(fan.chambers)
                    fan.chambers.append(ch)
                    fresh.append(index[key])
                cj = index[key]
                shared = fan.chambers[ci].cone.intersect(ch.cone)
                w = next(f for f in fan.chambers[ci].cone.facets
                         if all(dot(f, g) == 0 for g in shared.generators))
                adj.add((min(ci, cj), max(ci, cj), facet_normal(data, w)))
        if not fresh and fan.frontier == 0:
            fan.closed = True
            break
        level = fresh
    fan.adjacency = sorted(adj)
    return fan


def cluster_subdiagram(B, depth: int, k_order: int) -> ScatteringDiagram:
    """One wall (facet, 1 + zeta^{n0}) for every facet of the chamber fan."""
    data = InitialData.of(B)
    fan = chamber_fan(data.exchange, depth)
    walls = [Wall(facet, WallFunction(n0, [1], k_order)) for facet, n0 in fan.walls()]
    return ScatteringDiagram(data, k_order, walls)
