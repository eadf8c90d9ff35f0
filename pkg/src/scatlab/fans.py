"""Scattering fans, mutation fans, sign-coherence and refinement checks."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cones import Cone
from .diagram import ScatteringDiagram, _function_at, _sample_points
from .errors import NotMinimalSupport, RankUnsupported
from .lattice import InitialData, eta, eta_step_matrix, mutate_once
from .linalg import identity, matmul


class Fan:
    """A finite set of cones closed under taking faces."""

    def __init__(self, dim: int, cones: Iterable[Cone], stable: bool | None = None, depth: int | None = None):
        self.dim = dim
        self.cones = tuple(sorted(set(cones), key=lambda c: (c.dimension, c.key)))
        self.stable = stable
        self.depth = depth

    @classmethod
    def from_maximal(cls, dim: int, maximal: Iterable[Cone], **kw) -> "Fan":
        cones = set()
        for c in maximal:
            cones |= c.faces()
        return cls(dim, cones, **kw)

    def __eq__(self, other):
        return isinstance(other, Fan) and self.dim == other.dim and set(self.cones) == set(other.cones)

    def __hash__(self):
        return hash((self.dim, frozenset(self.cones)))

    def __len__(self):
        return len(self.cones)

    def __repr__(self):
        return f"Fan(dim={self.dim}, cones={len(self.cones)}, maximal={len(self.maximal)})"

    @property
    def maximal(self) -> list[Cone]:
        out = []
        for c in self.cones:
            if not any(d != c and d.dimension > c.dimension and d.is_face(c) for d in self.cones):
                out.append(c)
        return out

    def rays(self) -> list[Cone]:
        return [c for c in self.cones if c.dimension == 1 and not c.lineality]

    def is_complete(self) -> bool:
        """Every maximal cone is full-dimensional and each facet is shared by two of them."""
        maximal = self.maximal
        if not maximal or any(not c.is_full() for c in maximal):
            return False
        count: dict = {}
        for c in maximal:
            for f in c.facet_cones():
                count[f] = count.get(f, 0) + 1
        return all(v == 2 for v in count.values())

    def face_edges(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with cones[i] a facet of cones[j]."""
        index = {c: i for i, c in enumerate(self.cones)}
        edges = []
        for j, c in enumerate(self.cones):
            for f in c.facet_cones():
                if f in index:
                    edges.append((index[f], j))
        return sorted(edges)

    def locate(self, v: Sequence) -> Cone | None:
        for c in self.maximal:
            if c.contains(v):
                return c
        return None


@dataclass
class FanCheck:
    ok: bool
    witness: tuple = ()
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_fan(cones: Iterable[Cone]) -> FanCheck:
    """Face closure plus pairwise intersections being faces of both (checked on maximal cones)."""
    cones = list(set(cones))
    present = set(cones)
    for c in cones:
        for f in c.faces():
            if f not in present:
                return FanCheck(False, (c, f), "not closed under faces")
    maximal = [c for c in cones if not any(d != c and d.is_face(c) for d in cones)]
    for i, a in enumerate(maximal):
        for b in maximal[i + 1:]:
            meet = a.intersect(b)
            if not (a.is_face(meet) and b.is_face(meet)):
                return FanCheck(False, (a, b), "intersection is not a common face")
    return FanCheck(True)


# scattering fan -------------------------------------------------------------------


def is_minimal_support(D: ScatteringDiagram) -> bool:
    for normal in D.normals():
        for p in _sample_points([D], normal):
            on = [w for w in D.walls if w.normal == normal and w.cone.contains(p)]
            if on and _function_at([D], normal, p, D.order).is_trivial():
                return False
    return True


def arrangement_cells(dim: int, hyperplanes: Iterable[Sequence]) -> list[Cone]:
    cells = [Cone.whole(dim)]
    for h in hyperplanes:
        neg = tuple(-x for x in h)
        nxt = []
        for c in cells:
            if c.sign_on(h) is None:
                nxt += [c.halfspace(h), c.halfspace(neg)]
            else:
                nxt.append(c)
        cells = nxt
    return cells


def scat_fan(D: ScatteringDiagram, check: bool = True) -> Fan:
    """Fan of closures of D-classes of a finite diagram (rank at most 3)."""
    n = D.rank
    if n > 3:
        raise RankUnsupported("scattering fans are computed for rank at most 3")
    if check and not is_minimal_support(D):
        raise NotMinimalSupport("some wall region carries a trivial function")
    hyper = {D.covector(w.normal) for w in D.walls}
    if n == 3:
        for w in D.walls:
            for a in w.cone.facets:
                hyper.add(a)
    cells = arrangement_cells(n, sorted(hyper))
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_facet: dict = {}
    for i, c in enumerate(cells):
        for f in c.facet_cones():
            by_facet.setdefault(f, []).append(i)
    for f, idx in by_facet.items():
        if len(idx) == 2 and not D.on_support(f.relint_point()):
            parent[find(idx[0])] = find(idx[1])
    groups: dict = {}
    for i, c in enumerate(cells):
        groups.setdefault(find(i), []).extend(c.generators)
    maximal = [Cone.from_generators(g, n) for g in groups.values()]
    return Fan.from_maximal(n, maximal)


# mutation fan ---------------------------------------------------------------------


def _linear_map(b, seq, point):
    """Matrix L with eta_seq(v) = v L near ``point`` (cells are split so this is constant)."""
    n = len(b)
    lin = identity(n)
    cur = b
    for k in seq:
        val = sum(point[j] * lin[j][k] for j in range(n))
        lin = matmul(lin, eta_step_matrix(cur, k, val > 0))
        cur = mutate_once(cur, k)
    return lin


def mutation_fan(B, depth: int | None = None, cap: int = 30, patience: int = 3) -> Fan:
    """Common refinement of the sign-class pullbacks under eta_seq, |seq| <= depth.

    With ``depth=None`` the refinement is iterated until ``patience``
    consecutive sequence lengths split nothing (or ``cap`` is reached); the
    result records whether it stabilized.
    """
    data = InitialData.of(B)
    b = data.b
    n = len(b)
    cells = [Cone.whole(n)]
    seqs = [()]
    quiet = 0
    limit = cap if depth is None else depth
    reached = 0
    for q in range(limit + 1):
        split_any = False
        for seq in seqs:
            nxt = []
            for c in cells:
                lin = _linear_map(b, seq, c.relint_point())
                pieces = [c]
                for i in range(n):
                    h = tuple(lin[j][i] for j in range(n))
                    neg = tuple(-x for x in h)
                    new = []
                    for p in pieces:
                        if p.sign_on(h) is None:
                            new += [p.halfspace(h), p.halfspace(neg)]
                            split_any = True
                        else:
                            new.append(p)
                    pieces = new
                nxt += pieces
            cells = nxt
        reached = q
        quiet = 0 if split_any else quiet + 1
        if depth is None and quiet >= patience:
            return Fan.from_maximal(n, cells, stable=True, depth=q)
        seqs = [s + (k,) for s in seqs for k in range(n) if not s or s[-1] != k]
    return Fan.from_maximal(n, cells, stable=False if depth is None else None, depth=reached)


# sign-coherence --------------------------------------------------------------------


class BConeAnswer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class BConeResult:
    answer: BConeAnswer
    sequence: tuple = ()
    index: int | None = None
    depth: int | None = None

    def __bool__(self):
        return self.answer is BConeAnswer.YES


def _incoherent_index(gens) -> int | None:
    n = len(gens[0]) if gens else 0
    for i in range(n):
        if any(g[i] > 0 for g in gens) and any(g[i] < 0 for g in gens):
            return i
    return None


def in_b_cone(C: Cone, B, depth: int) -> BConeResult:
    """Sign-coherence of eta_seq(C) for all sequences up to ``depth``."""
    data = InitialData.of(B)
    b = data.b
    n = len(b)
    start = (b, Cone.from_generators(C.generators, n))
    seen = {(start[0], start[1].key)}
    queue = deque([((), start[0], start[1])])
    truncated = False
    while queue:
        seq, cur, cone = queue.popleft()
        gens = list(cone.generators)
        bad = _incoherent_index(gens)
        if bad is not None:
            return BConeResult(BConeAnswer.NO, seq, bad)
        if len(seq) >= depth:
            truncated = True
            continue
        for k in range(n):
            img = Cone.from_generators([eta(cur, [k], g) for g in gens], n)
            nb = mutate_once(cur, k)
            state = (nb, img.key)
            if state not in seen:
                seen.add(state)
                queue.append((seq + (k,), nb, img))
    if truncated:
        return BConeResult(BConeAnswer.UNKNOWN, depth=depth)
    return BConeResult(BConeAnswer.YES)


# refinement ------------------------------------------------------------------------


@dataclass
class RefinementResult:
    ok: bool
    witness: Cone | None = None

    def __bool__(self):
        return self.ok


def check_refinement(fine: Fan, coarse: Fan) -> RefinementResult:
    """Every cone of ``fine`` lies in some cone of ``coarse``."""
    if fine.dim != coarse.dim:
        raise ValueError("fans live in different dimensions")
    targets = coarse.maximal
    for c in fine.maximal:
        if not any(t.contains_cone(c) for t in targets):
            return RefinementResult(False, c)
    return RefinementResult(True)
