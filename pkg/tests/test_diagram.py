from fractions import Fraction

import pytest

from scatlab.cones import Cone
from scatlab.completion import cluster_scatter_rank2, initial_walls
from scatlab.diagram import (PiecewisePath, ScatteringDiagram, Wall, WallType, check_consistency,
                             classify_wall, cross_wall, equivalent, f_general_point,
                             make_generic_path, make_wall, minimal_support, path_crossings,
                             path_ordered_product, ramparts)
from scatlab.errors import EndpointOnSupport, NotGeneral
from scatlab.lattice import A2, InitialData
from scatlab.series import LaurentElement, TruncatedSeries, WallFunction

DATA = InitialData.of(A2)


@pytest.fixture(scope="module")
def a2():
    return cluster_scatter_rank2(A2, 8)


def bare(order=8):
    return ScatteringDiagram(DATA, order, initial_walls(DATA, order))


def test_classify_examples():
    line = make_wall(DATA, [(0, 1), (0, -1)], (1, 0), [1], 5)
    assert classify_wall(DATA, line) is WallType.INCOMING
    out = make_wall(DATA, [(1, -1)], (1, 1), [1], 5)
    assert classify_wall(DATA, out) is WallType.OUTGOING
    inc = make_wall(DATA, [(-1, 1)], (1, 1), [1], 5)
    assert classify_wall(DATA, inc) is WallType.INCOMING


def test_cross_wall_examples():
    wall = make_wall(DATA, [(0, 1), (0, -1)], (1, 0), [1], 5)
    img = cross_wall(DATA, (1, 0), wall, +1)
    assert img == LaurentElement((1, 0), TruncatedSeries(2, 5, {(0, 0): 1, (1, 0): 1}))
    assert cross_wall(DATA, (0, 1), wall, +1) == LaurentElement((0, 1), TruncatedSeries.one(2, 5))


def test_crossing_then_crossing_back():
    wall = make_wall(DATA, [(1, -1)], (1, 1), [1], 6)
    D = ScatteringDiagram(DATA, 6, [wall])
    there = PiecewisePath(((1, 0), (0, -1)))
    back = PiecewisePath(((0, -1), (1, 0)))
    loop = path_ordered_product(D, back).compose(path_ordered_product(D, there))
    assert loop.is_identity()


def test_single_wall_path_equals_cross_wall():
    wall = make_wall(DATA, [(0, 1), (0, -1)], (1, 0), [1], 5)
    D = ScatteringDiagram(DATA, 5, [wall])
    auto = path_ordered_product(D, PiecewisePath(((1, 1), (-1, 1))))
    assert auto.apply_monomial((1, 0)) == cross_wall(DATA, (1, 0), wall, +1)


def test_full_loop_identity_on_completed_a2(a2):
    loop = PiecewisePath(((1, Fraction(1, 3)), (-1, Fraction(1, 2)), (Fraction(-1, 3), -1),
                          (Fraction(3, 2), Fraction(-1, 5)), (1, Fraction(1, 3))))
    assert path_ordered_product(a2, loop).is_identity()


def test_full_loop_on_bare_a2_fails_in_degree_two():
    loop = PiecewisePath(((1, Fraction(1, 3)), (-1, Fraction(1, 2)), (Fraction(-1, 3), -1),
                          (Fraction(3, 2), Fraction(-1, 5)), (1, Fraction(1, 3))))
    auto = path_ordered_product(bare(), loop)
    g = auto.images[0]
    assert not g.is_one()
    assert min(sum(e) for e in (g - 1).terms) == 2


def test_generic_path_examples(a2):
    path = make_generic_path(a2, (1, 1), (-1, -1), seed=2)
    assert len(path.vertices) == 4
    crossings = path_crossings(a2, path)
    assert [c.walls[0].normal for c in crossings] == [(0, 1), (1, 1), (1, 0)]
    direct = make_generic_path(a2, (1, 2), (2, 1))
    assert direct.vertices == ((1, 2), (2, 1))
    with pytest.raises(EndpointOnSupport):
        make_generic_path(a2, (0, 1), (1, 1))


def test_path_products_depend_only_on_endpoints(a2):
    ref = path_ordered_product(a2, make_generic_path(a2, (1, 1), (-1, -1), seed=0))
    for seed in range(1, 8):
        assert path_ordered_product(a2, make_generic_path(a2, (1, 1), (-1, -1), seed=seed)) == ref


def test_consistency_examples(a2):
    assert check_consistency(a2, 8).passed
    report = check_consistency(bare(2), 2)
    assert not report.passed
    assert report.failures[0][0] == (0, 0)
    assert check_consistency(ScatteringDiagram(DATA, 4, [])).passed


def test_f_general_point_examples(a2):
    assert f_general_point(a2, (1, 2)).is_one()
    assert f_general_point(a2, (2, -2)) == TruncatedSeries(2, 8, {(0, 0): 1, (1, 1): 1})
    assert f_general_point(a2, (2, 0)) == TruncatedSeries(2, 8, {(0, 0): 1, (0, 1): 1})
    with pytest.raises(NotGeneral):
        f_general_point(a2, (0, 0))


def test_equivalence_examples(a2):
    trivial = Wall(Cone.from_generators([(1, -1)]), WallFunction((1, 1), [], 8))
    assert equivalent(a2, a2.with_walls([trivial]))
    f = WallFunction((1, 1), [1], 8)
    pair = ScatteringDiagram(DATA, 8, [Wall(Cone.ray((1, -1)), f), Wall(Cone.ray((1, -1)), f.invert())])
    assert equivalent(pair, ScatteringDiagram(DATA, 8, []))
    assert not equivalent(a2, bare())


def test_minimal_support_examples(a2):
    assert minimal_support(a2) == a2
    telescoping = []
    prev = WallFunction((1, 1), [], 6)
    for i in range(1, 7):
        target = WallFunction((1, 1), [0] * (i - 1) + [1], 6)
        telescoping.append(Wall(Cone.ray((1, -1)), target.times(prev.invert())))
        prev = target
    D = ScatteringDiagram(DATA, 6, telescoping)
    tail = WallFunction((1, 1), [0] * 5 + [1], 6)
    # the family multiplies to 1 + zeta^{6 n0}; with its inverse added the rampart is empty
    D = D.with_walls([Wall(Cone.ray((1, -1)), tail.invert())])
    assert minimal_support(D).walls == ()


def test_ramparts_examples(a2):
    assert sorted(ramparts(a2)) == [(0, 1), (1, 0), (1, 1)]
    assert ramparts(ScatteringDiagram(DATA, 3, [])) == {}
    w1 = make_wall(DATA, [(0, 1)], (1, 0), [1], 3)
    w2 = make_wall(DATA, [(0, -1)], (1, 0), [2], 3)
    assert len(ramparts(ScatteringDiagram(DATA, 3, [w1, w2]))) == 1
