from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from k3lattice import _linalg

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def test_bareiss_known():
    assert _linalg.bareiss_det([[2, 1], [1, 2]]) == 3
    assert _linalg.bareiss_det([[0, 1], [1, 0]]) == -1
    assert _linalg.bareiss_det([]) == 1


@given(st.integers(1, 5).flatmap(square))
def test_bareiss_matches_rational(m):
    assert _linalg.bareiss_det(m) == _linalg.rational_det(m)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_roundtrip(m):
    if _linalg.bareiss_det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            _linalg.inverse(m)
        return
    inv = _linalg.inverse(m)
    assert _linalg.matmul(m, inv) == _linalg.identity(len(m))


def test_solve_rational_unique_and_errors():
    assert _linalg.solve_rational([[2, 1], [1, 3]], [3, 4]) == [1, 1]
    with pytest.raises(ValueError):
        _linalg.solve_rational([[1, 1], [2, 2]], [1, 3])
    with pytest.raises(ValueError):
        _linalg.solve_rational([[1, 1]], [1])


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_same_row_space(rows):
    h = _linalg.hnf_rows(rows)
    assert _linalg.rank_rational(h) == _linalg.rank_rational(rows) == len(h)
    for row in h:
        first = next(x for x in row if x)
        assert first > 0


def test_common_denominator():
    assert _linalg.common_denominator([Fraction(1, 3), Fraction(1, 2), 4]) == 6
