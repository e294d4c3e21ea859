from fractions import Fraction

import pytest

from derivedhecke.linalg import QQ, PrimeField, determinant, in_span, inverse, matmul, nullspace, parse_field, rank


def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:5") == PrimeField(5)
    with pytest.raises(ValueError):
        parse_field("Fp:6")
    with pytest.raises(ValueError):
        parse_field("R")


def test_rank_depends_on_field():
    M = [[1, 1], [1, -1]]
    assert rank(M, QQ) == 2
    assert rank(M, PrimeField(2)) == 1
    assert determinant(M, QQ) == -2


def test_prime_field_coerces_fractions():
    F = PrimeField(5)
    assert F.coerce(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F.coerce(Fraction(1, 5))


def test_nullspace_and_span():
    M = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace(M, QQ)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    assert in_span([[1, 0, 0], [0, 1, 0]], [2, 3, 0], QQ)
    assert not in_span([[1, 0, 0]], [0, 1, 0], QQ)


def test_inverse():
    A = [[2, 1], [1, 1]]
    assert matmul(A, inverse(A, QQ), QQ) == [[1, 0], [0, 1]]
