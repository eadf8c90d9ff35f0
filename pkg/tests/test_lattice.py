from fractions import Fraction

import pytest

from scatlab.errors import IndexOutOfRange, NotSkewSymmetrizable
from scatlab.lattice import (A2, A3, B2, KRONECKER2, ExchangeMatrix, InitialData, eta,
                             is_finite_mutation_type, mutate_matrix, skew_symmetrizer)

import oracles


def test_skew_symmetrizer_examples():
    assert skew_symmetrizer([[0, 1], [-1, 0]]) == (1, 1)
    assert skew_symmetrizer([[0, 1], [-2, 0]]) == (2, 1)
    with pytest.raises(NotSkewSymmetrizable):
        skew_symmetrizer([[0, 1], [2, 0]])


def test_skew_symmetrizer_relation_g2():
    b = [[0, 1], [-3, 0]]
    d = skew_symmetrizer(b)
    assert all(d[i] * b[i][j] == -d[j] * b[j][i] for i in range(2) for j in range(2))


def test_mutate_examples():
    assert mutate_matrix(A2.rows, [0]) == ((0, -1), (1, 0))
    assert mutate_matrix(A3.rows, [1]) == ((0, -1, 1), (1, 0, -1), (-1, 1, 0))


@pytest.mark.parametrize("B", [A2, B2, A3, KRONECKER2], ids=["A2", "B2", "A3", "K2"])
def test_mutation_is_involution(B):
    for k in range(B.n_uf):
        assert B.mutate([k, k]) == B


def test_mutation_matches_brute_force_rule():
    b = [[0, 2, -1], [-2, 0, 3], [1, -3, 0]]
    for k in range(3):
        assert mutate_matrix(b, [k]) == tuple(map(tuple, oracles.mutate(b, k)))


def test_mutation_index_checked():
    with pytest.raises(IndexOutOfRange):
        A2.mutate([2])


def test_eta_examples():
    assert eta(A2.rows, [0], (1, 0)) == (-1, 1)
    assert eta(A3.rows, [2], (0, 0, 0)) == (0, 0, 0)
    v = (3, -2)
    there = eta(A2.rows, [0], v)
    assert eta(A2.mutate([0]).rows, [0], there) == v


def test_eta_rational_input():
    out = eta(B2.rows, [1], (Fraction(1, 2), Fraction(-1, 3)))
    assert all(isinstance(x, (int, Fraction)) for x in out)


def test_p_star_examples():
    data = InitialData.of(A2)
    assert data.p_star((1, 0)) == (0, 1)
    assert data.p_star((0, 1)) == (-1, 0)
    assert data.p_star((0, 0)) == (0, 0)


def test_p_star_with_frozen_columns():
    data = InitialData.of(A2.principal())
    assert data.p_star((1, 0)) == (0, 1, 1, 0)
    assert data.p_star_uf((1, 0)) == (0, 1)


def test_bracket_is_skew():
    data = InitialData.of(B2)
    assert data.bracket((1, 0), (0, 1)) == -data.bracket((0, 1), (1, 0))


def test_n_prime_uses_the_symmetrizer():
    data = InitialData.of(B2)
    assert data.n_prime((1, 1)) == (2, 2)
    assert data.n_prime((0, 1)) == (0, 1)


def test_finite_mutation_type():
    assert is_finite_mutation_type([[0, 5], [-1, 0]])
    assert is_finite_mutation_type(A3.rows)
    assert not is_finite_mutation_type([[0, 3, 0], [-3, 0, 3], [0, -3, 0]])


def test_exchange_matrix_shape_checked():
    with pytest.raises(ValueError):
        ExchangeMatrix(2, 2, ((0, 1),))


def test_principal_extension():
    P = B2.principal()
    assert P.n_total == 4
    assert P.rows == ((0, 1, 1, 0), (-2, 0, 0, 1))
    assert P.square == B2.rows
