import json
from fractions import Fraction
from pathlib import Path

import pytest

from scatlab.cones import Cone
from scatlab.completion import (census_tsv, cluster_scatter_rank2, outgoing_direction,
                                wall_census)
from scatlab.diagram import WallType, check_consistency, classify_wall
from scatlab.errors import NotRank2
from scatlab.lattice import A2, A3, B2, G2, KRONECKER2, ExchangeMatrix

import oracles

FIXTURES = Path(__file__).parent / "fixtures"


def outgoing(D):
    """{normal: coeffs} of the walls that are rays, trailing zeros dropped."""
    out = {}
    for w in D.walls:
        if w.cone.dimension == 1 and w.cone.rays:
            cs = list(w.fn.coeffs)
            while cs and cs[-1] == 0:
                cs.pop()
            out[w.fn.normal] = [Fraction(c) for c in cs]
    return out


def trimmed(rays):
    out = {}
    for n, cs in rays.items():
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        if cs:
            out[n] = [Fraction(c) for c in cs]
    return out


def test_zero_matrix_has_no_outgoing_rays():
    D = cluster_scatter_rank2(ExchangeMatrix.from_rows([[0, 0], [0, 0]]), 6)
    assert outgoing(D) == {}
    assert len(D.walls) == 2


def test_a2_adds_one_ray():
    D = cluster_scatter_rank2(A2, 8)
    assert outgoing(D) == {(1, 1): [1]}
    ray = next(w for w in D.walls if w.fn.normal == (1, 1))
    assert ray.cone.rays == ((1, -1),)


def test_b2_normals_from_factorization():
    assert set(outgoing(cluster_scatter_rank2(B2, 8))) == {(1, 1), (2, 1)}


def test_g2_normals_from_factorization():
    assert set(outgoing(cluster_scatter_rank2(G2, 8))) == {(1, 1), (2, 1), (3, 1), (3, 2)}


@pytest.mark.parametrize("rows", [[[0, 1], [-1, 0]], [[0, 1], [-2, 0]], [[0, 2], [-1, 0]],
                                  [[0, 1], [-3, 0]], [[0, 2], [-2, 0]], [[0, 1], [-4, 0]],
                                  [[0, 3], [-1, 0]]])
def test_agrees_with_factorization_oracle(rows):
    order = 7
    D = cluster_scatter_rank2(ExchangeMatrix.from_rows(rows), order)
    assert outgoing(D) == trimmed(oracles.factorize_rank2(rows, order))


def test_kronecker_golden_file():
    doc = json.loads((FIXTURES / "kronecker2_k10_walls.json").read_text())
    expected = {tuple(w["normal"]): [Fraction(c) for c in w["coeffs"]] for w in doc["outgoing"]}
    assert outgoing(cluster_scatter_rank2(KRONECKER2, doc["order"])) == trimmed(expected)


def test_truncations_are_coherent():
    hi = cluster_scatter_rank2(KRONECKER2, 12)
    lo = cluster_scatter_rank2(KRONECKER2, 7)
    trunc = {n: cs for n, cs in outgoing(hi.truncate(7)).items() if cs}
    assert trunc == outgoing(lo)


@pytest.mark.parametrize("B", [A2, B2, G2, KRONECKER2], ids=["A2", "B2", "G2", "K2"])
def test_added_walls_are_outgoing_and_consistent(B):
    D = cluster_scatter_rank2(B, 6)
    for w in D.walls:
        if w.cone.dimension == 1 and w.cone.rays:
            assert classify_wall(D.data, w) is WallType.OUTGOING
            assert w.cone == Cone.ray(outgoing_direction(D.data, w.fn.normal))
    assert check_consistency(D, 6).passed


def test_frozen_rows_do_not_change_wall_functions():
    plain = outgoing(cluster_scatter_rank2(B2, 6))
    assert outgoing(cluster_scatter_rank2(B2.principal(), 6)) == plain


def test_rank_is_checked():
    with pytest.raises(NotRank2):
        cluster_scatter_rank2(A3, 4)


def test_census_records_every_new_ray():
    rows = wall_census(G2, 6)
    new = {r.normal for r in rows if r.new}
    assert new == set(outgoing(cluster_scatter_rank2(G2, 6)))
    assert all(r.degree == r.ell * sum(r.normal) for r in rows)
    text = census_tsv(rows)
    assert text.splitlines()[0] == "degree\tnormal\tell\tcoeff\tnew"
    assert len(text.splitlines()) == len(rows) + 1
