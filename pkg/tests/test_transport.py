import random
from fractions import Fraction

import pytest

from scatlab.cones import Cone
from scatlab.completion import cluster_scatter_rank2
from scatlab.diagram import ScatteringDiagram, check_consistency, equivalent, make_wall
from scatlab.errors import IndexOutOfRange
from scatlab.lattice import A2, A3, B2, G2, KRONECKER2, InitialData, eta
from scatlab.series import WallFunction
from scatlab.transport import (TransportMaps, apply_M_k, chamber_fan, cluster_subdiagram,
                               verify_mutation_equiv)


def test_a2_transport_example():
    D = apply_M_k(cluster_scatter_rank2(A2, 8), 0)
    assert D.data.b == A2.mutate([0]).rows
    assert equivalent(D, cluster_scatter_rank2(A2.mutate([0]), 8))
    rays = [w for w in D.walls if w.fn.normal == (1, 1)]
    assert len(rays) == 1 and rays[0].cone == Cone.ray((-1, 1))
    assert list(rays[0].fn.coeffs[:1]) == [1]
    # e_2^perp is reassembled from two rays with the same function
    halves = [w for w in D.walls if w.fn.normal == (0, 1)]
    assert {w.cone for w in halves} == {Cone.ray((1, 0)), Cone.ray((-1, 0))}


def test_walls_in_mutation_hyperplane_are_fixed():
    data = InitialData.of(A2)
    wall = make_wall(data, [(0, 1), (0, -1)], (1, 0), [1], 5)
    D = apply_M_k(ScatteringDiagram(data, 5, [wall]), 0)
    assert D.walls == (wall,)


def test_transport_twice_returns_the_input():
    D = cluster_scatter_rank2(B2, 6)
    back = apply_M_k(apply_M_k(D, 1), 1)
    assert back.data.b == D.data.b
    assert equivalent(back, D)


def test_index_checked():
    with pytest.raises(IndexOutOfRange):
        apply_M_k(cluster_scatter_rank2(A2, 3), 2)
    with pytest.raises(IndexOutOfRange):
        TransportMaps.of(A2.rows, -1)


@pytest.mark.parametrize("B,k", [(A2, 0), (B2, 1), (KRONECKER2, 0)], ids=["A2", "B2", "K2"])
def test_verify_mutation_equiv_examples(B, k):
    assert verify_mutation_equiv(B, k, 8)


def test_cone_map_agrees_with_eta():
    rng = random.Random(7)
    for B in (A2, B2, G2, KRONECKER2):
        for k in range(2):
            maps = TransportMaps.of(B.rows, k)
            for _ in range(50):
                v = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(2))
                m = maps.side_pos if v[k] >= 0 else maps.side_neg
                img = tuple(sum(v[i] * m[i][j] for i in range(2)) for j in range(2))
                assert img == eta(B.rows, [k], v)


def test_chamber_fan_examples():
    fan = chamber_fan(A2, 5)
    assert len(fan) == 5 and fan.closed and fan.frontier == 0
    assert fan.all_facets_shared()
    start = chamber_fan(B2, 0)
    assert len(start) == 1
    assert start.chambers[0].cone == Cone.from_generators([(1, 0), (0, 1)])


def test_kronecker_chamber_fan_is_open():
    fan = chamber_fan(KRONECKER2, 6)
    assert not fan.closed and fan.frontier > 0
    # C+ plus one new chamber per depth on each side
    assert len(fan) == 13


@pytest.mark.parametrize("B,count", [(A2, 5), (B2, 6), (G2, 8), (A3, 14)], ids=["A2", "B2", "G2", "A3"])
def test_finite_type_chamber_counts(B, count):
    fan = chamber_fan(B, 12)
    assert fan.closed and len(fan) == count
    assert fan.all_facets_shared()
    assert all(len(c.cone.rays) == B.n_uf for c in fan.chambers)


def test_eta_maps_chambers_onto_mutated_chambers():
    for B in (A2, B2, A3):
        there = {c.cone for c in chamber_fan(B.mutate([0]), 12).chambers}
        for c in chamber_fan(B, 12).chambers:
            gens = [eta(B.rows, [0], g) for g in c.cone.rays]
            assert Cone.from_generators(gens, B.n_uf) in there


def test_cluster_subdiagram_examples():
    assert equivalent(cluster_subdiagram(A2, 5, 6), cluster_scatter_rank2(A2, 6))
    D = cluster_subdiagram(A3, 10, 6)
    assert check_consistency(D, 6).passed
    init = cluster_subdiagram(A3, 0, 4)
    assert sorted(w.fn.normal for w in init.walls) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert all(w.fn == WallFunction(w.fn.normal, [1], 4) for w in init.walls)
