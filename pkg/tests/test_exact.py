from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistham.exact import (
    fmt,
    integer_kernel,
    integer_solve,
    normalize,
    rational_kernel,
    rational_solve,
    rref,
    to_rational,
)

small = st.integers(-4, 4)
matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
)


def test_to_rational_accepts_exact_text():
    assert to_rational("-2/7") == Fraction(-2, 7)
    assert to_rational("0.125") == Fraction(1, 8)
    assert to_rational("4/2") == 2 and type(to_rational("4/2")) is int


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0"])
def test_to_rational_rejects(bad):
    with pytest.raises((TypeError, ValueError)):
        to_rational(bad)


def test_normalize_and_fmt():
    assert type(normalize(Fraction(6, 3))) is int
    assert fmt(Fraction(-3, 6)) == "-1/2"
    assert fmt(Fraction(4, 1)) == "4"


def test_rref_identity_and_rank():
    R, piv = rref([[2, 4], [1, 2]])
    assert piv == [0] and R[0] == [1, 2]


@given(matrices)
def test_rational_kernel_is_kernel(M):
    ncols = len(M[0])
    K = rational_kernel(M, ncols)
    _, piv = rref(M)
    assert len(K) == ncols - len(piv)
    for v in K:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@given(matrices)
def test_integer_kernel_integral_and_full_rank(M):
    ncols = len(M[0])
    K = integer_kernel(M, ncols)
    _, piv = rref(M)
    assert len(K) == ncols - len(piv)
    for v in K:
        assert all(isinstance(x, int) for x in v)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@given(matrices, st.data())
def test_solvers_solve_consistent_systems(M, data):
    ncols = len(M[0])
    x0 = data.draw(st.lists(small, min_size=ncols, max_size=ncols))
    b = [sum(a * x for a, x in zip(row, x0)) for row in M]
    for solve in (rational_solve, integer_solve):
        x = solve(M, b, ncols)
        assert x is not None
        assert [sum(a * y for a, y in zip(row, x)) for row in M] == b


def test_integer_solve_detects_rational_only():
    # 2x = 1 has a rational but no integral solution
    assert rational_solve([[2]], [1], 1) == [Fraction(1, 2)]
    assert integer_solve([[2]], [1], 1) is None
