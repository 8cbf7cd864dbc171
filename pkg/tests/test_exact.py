from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelian_cover_lab.exact import (ONE, OMEGA, ZERO, CycNum, FieldMatrix, cyc_mul_inv, field_kernel,
                                     int_det, int_matmul, omega_power, smith_normal_form)
from strategies import cycnums, int_matrices


def test_omega_squared():
    prod, inv = cyc_mul_inv(OMEGA, OMEGA)
    assert prod == CycNum(-1, -1)
    assert inv == omega_power(2)


def test_one_plus_omega_inverse():
    prod, inv = cyc_mul_inv(CycNum(1, 1), ONE)
    assert prod == CycNum(1, 1)
    assert inv == CycNum(0, -1)


def test_zero_has_no_inverse():
    assert cyc_mul_inv(ZERO, ONE)[1] is None
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_rationals_are_canonical():
    x = CycNum(Fraction(4, -6))
    assert x.re0.denominator == 3 and x.re0.numerator == -2
    assert CycNum(0) == 0 and not CycNum(0, 0)


def test_omega_cubed_is_one():
    assert OMEGA ** 3 == ONE
    assert OMEGA ** 2 + OMEGA + 1 == ZERO
    assert OMEGA ** -1 == omega_power(2)


@given(cycnums(nonzero=True))
def test_inverse_is_exact(x):
    assert x * x.inverse() == ONE


@given(cycnums(), cycnums(), cycnums())
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)


def test_kernel_of_identity_is_empty():
    assert field_kernel(FieldMatrix.identity(3)) == []


def test_kernel_of_zero_matrix():
    basis = field_kernel(FieldMatrix.zeros(2, 3))
    assert len(basis) == 3


@given(st.lists(st.lists(cycnums(), min_size=4, max_size=4), min_size=1, max_size=3))
def test_kernel_vectors_are_killed(rows):
    m = FieldMatrix.from_rows(rows)
    basis = field_kernel(m)
    assert len(basis) == m.cols - m.rank()
    for v in basis:
        assert (m @ v).is_zero()
        first = next(x for x in v.entries if x)
        assert first == ONE


def test_inverse_and_det():
    m = FieldMatrix.from_rows([[1, OMEGA], [0, 2]])
    assert m.det() == 2
    assert m @ m.inverse() == FieldMatrix.identity(2)


def test_snf_identity():
    assert list(smith_normal_form([[int(i == j) for j in range(4)] for i in range(4)]).divisors) == [1, 1, 1, 1]


def test_snf_gram_of_index_three_lattice():
    g = [[0, 0, 1, 0], [0, 0, 0, 3], [-1, 0, 0, 0], [0, -3, 0, 0]]
    assert list(smith_normal_form(g).divisors) == [1, 1, 3, 3]


def test_snf_diagonal():
    assert list(smith_normal_form([[2, 0], [0, 4]]).divisors) == [2, 4]
    assert list(smith_normal_form([[4, 0], [0, 6]]).divisors) == [2, 12]


def _recompose_ok(M):
    dec = smith_normal_form(M)
    U, D, V = [list(r) for r in dec.U], [list(r) for r in dec.D], [list(r) for r in dec.V]
    return int_matmul(int_matmul(U, M), V) == D and abs(int_det(U)) == 1 and abs(int_det(V)) == 1


@given(int_matrices)
def test_snf_recomposition(M):
    assert _recompose_ok(M)
    divs = [d for d in smith_normal_form(M).divisors if d]
    assert all(b % a == 0 for a, b in zip(divs, divs[1:]))
    assert all(d >= 0 for d in smith_normal_form(M).divisors)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3),
       st.integers(-3, 3), st.integers(-3, 3))
def test_snf_invariant_under_unimodular_change(M, s, t):
    P = [[1, s, 0], [0, 1, 0], [0, 0, 1]]
    Q = [[1, 0, 0], [t, 1, 0], [0, 0, -1]]
    moved = int_matmul(int_matmul(P, M), Q)
    assert smith_normal_form(moved).divisors == smith_normal_form(M).divisors
