"""Hypothesis strategies for elements of a given algebra."""

from hypothesis import strategies as st

from twistham.elements import AlgebraElement


def keys(alg, radius=2, cap=2):
    groups = st.tuples(*[st.integers(-radius, radius)] * alg.m)
    slots = [st.integers(0, cap) if alg._nat[p] else st.just(0) for p in range(alg.width)]
    return st.tuples(groups, st.tuples(*slots))


def monomials(alg, **kw):
    return keys(alg, **kw).map(lambda k: AlgebraElement({k: 1}))


def elements(alg, max_terms=3, **kw):
    coef = st.integers(-3, 3).filter(bool)
    return st.dictionaries(keys(alg, **kw), coef, min_size=1, max_size=max_terms).map(AlgebraElement.from_dict_accumulate)
