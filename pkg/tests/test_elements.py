from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistham.elements import AlgebraElement, ElementSyntaxError, parse_element, render

keys = st.tuples(st.tuples(*[st.integers(-3, 3)] * 5), st.tuples(*[st.integers(0, 2)] * 4))
coefs = st.one_of(st.integers(-9, 9), st.fractions(max_denominator=7).filter(lambda q: abs(q) < 10))
elements = st.dictionaries(keys, coefs, max_size=5).map(lambda d: AlgebraElement.from_dict_accumulate(d))


def test_render_examples():
    u = AlgebraElement({((0, 0, 0, 0, 0), (0, 0, 0, 0)): 2})
    assert render(u) == "2 * x[0,0,0,0,0|0,0,0,0]"
    assert render(AlgebraElement()) == "0"


@given(elements)
def test_parse_render_round_trip(u):
    assert parse_element(render(u), 5, 4) == u


@given(elements, elements)
def test_vector_space_laws(u, v):
    assert u + v == v + u
    assert (u - u).is_zero()
    assert u.scale(Fraction(1, 2)).scale(2) == u
    assert (u + v) - v == u


def test_parse_accumulates_and_cancels():
    t = "1 * x[1,0|0] + -1 * x[1,0|0] + 1/2 * x[0,0|1]"
    assert parse_element(t) == AlgebraElement({((0, 0), (1,)): Fraction(1, 2)})


@pytest.mark.parametrize("bad", [
    "x[0,0|0]",
    "1 * x[0,0|0] 2 * x[1,0|0]",
    "1 * x[0,a|0]",
    "1 * x[0,0|-1]",
])
def test_parse_rejects(bad):
    with pytest.raises(ElementSyntaxError):
        parse_element(bad)


def test_parse_checks_lengths():
    with pytest.raises(ElementSyntaxError, match="length"):
        parse_element("1 * x[0,0|0]", m=5)
    with pytest.raises(ElementSyntaxError, match="length"):
        parse_element("1 * x[0,0,0,0,0|0]", m=5, width=4)
