from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wedgedyn import IntMatrix, NotDivisible, SingularMatrix, c_matrix, rat_inverse, snf


def int_matrix(n, lo=-9, hi=9):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=n, max_size=n),
        min_size=n, max_size=n,
    ).map(lambda rows: IntMatrix(tuple(tuple(r) for r in rows)))


def test_basic_arithmetic():
    a = IntMatrix(((3, 1), (1, 3)))
    i = IntMatrix.identity(2)
    assert a + i == IntMatrix(((4, 1), (1, 4)))
    assert a - i == IntMatrix(((2, 1), (1, 2)))
    assert a * i == a
    assert a * 2 == IntMatrix(((6, 2), (2, 6)))
    assert a ** 0 == i
    assert a ** 2 == IntMatrix(((10, 6), (6, 10)))
    assert a.apply((1, 0)) == (3, 1)
    assert a.transpose() == a
    assert a.trace() == 6
    assert a.det() == 8


def test_det_known_values():
    assert IntMatrix(((1, 2), (3, 4))).det() == -2
    assert IntMatrix(((2, 0, 0), (0, 3, 0), (0, 0, 5))).det() == 30
    assert IntMatrix.zero(3).det() == 0


@settings(max_examples=200, deadline=None)
@given(int_matrix(2))
def test_det_matches_numpy_2x2(a):
    expect = round(np.linalg.det(np.array(a.rows, dtype=float)))
    assert a.det() == expect


@settings(max_examples=200, deadline=None)
@given(int_matrix(3))
def test_det_matches_numpy_3x3(a):
    expect = round(np.linalg.det(np.array(a.rows, dtype=float)))
    assert a.det() == expect


def _check_snf(a):
    dec = snf(a)
    n = a.dim
    assert dec.U * a * dec.V == dec.D
    assert abs(dec.U.det()) == 1
    assert abs(dec.V.det()) == 1
    diag = [dec.D.rows[i][i] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                assert dec.D.rows[i][j] == 0
    assert all(d >= 0 for d in diag)
    for i in range(n - 1):
        if diag[i + 1] != 0:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
    prod = 1
    for d in diag:
        prod *= d
    assert prod == abs(a.det())


@settings(max_examples=200, deadline=None)
@given(int_matrix(2))
def test_snf_identities_2x2(a):
    _check_snf(a)


@settings(max_examples=200, deadline=None)
@given(int_matrix(3))
def test_snf_identities_3x3(a):
    _check_snf(a)


def test_snf_deterministic(a2):
    m = a2 - IntMatrix.identity(2)
    d1, d2 = snf(m), snf(m)
    assert d1.U == d2.U and d1.V == d2.V and d1.D == d2.D
    assert [d1.D.rows[i][i] for i in range(2)] == [1, 3]
    assert d1.invariant_factors == (3,)


def test_rat_inverse():
    a = IntMatrix(((3, 1), (1, 3)))
    inv = rat_inverse(a)
    assert inv * a.to_rat() == a.to_rat().identity(2)
    assert inv.rows[0][0] == Fraction(3, 8)
    with pytest.raises(SingularMatrix):
        rat_inverse(IntMatrix(((1, 1), (1, 1))))


def test_c_matrix_identity(a2):
    # (A^j - I) = C_ij (A^i - I) by construction
    i2 = IntMatrix.identity(2)
    for i, j in [(1, 2), (1, 4), (2, 4), (3, 6)]:
        c = c_matrix(a2, i, j)
        assert c * (a2 ** i - i2) == a2 ** j - i2
    with pytest.raises(NotDivisible):
        c_matrix(a2, 2, 3)
