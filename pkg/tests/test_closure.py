import random

import pytest
from hypothesis import given, strategies as st

from twistham.algebra import QuotientElement
from twistham.closure import (
    AmbientOverflow,
    EchelonSpan,
    UnsupportedOperator,
    Window,
    derived_subalgebra_window,
    eigen_separate,
    evaluate_certificate,
    ideal_closure,
    rref_exact,
    submodule_closure,
    widen_shifted,
)
from twistham.elements import AlgebraElement
from twistham.instances import desk1_module_irreducible, desk1_module_mu
from twistham.lattice import unit_vector
from twistham.module import ActionContext, ModuleVector
from twistham.sampling import random_from_keys

E = lambda k: unit_vector(5, k - 1)  # noqa: E731
Z5 = (0,) * 5
PROBE = Window.cube(5, 1, 1)


def mono(a, i=(0, 0, 0, 0), c=1):
    return AlgebraElement({(tuple(a), tuple(i)): c})


# -- windows and spans -------------------------------------------------------------


def test_window_invariants():
    with pytest.raises(ValueError):
        Window(((1, 0),), 0)
    with pytest.raises(ValueError):
        Window(((0, 0),), -1)
    w = Window(((0, 1), (0, 0)), 1)
    basis = w.basis((True, False))
    assert basis == sorted(basis) and len(basis) == w.size((True, False)) == 4


def test_rref_examples():
    one = mono(Z5)
    ambient = [(Z5, (0,) * 4), (E(1), (0,) * 4), (E(2), (0,) * 4)]
    assert rref_exact([one, one.scale(2)], ambient).dimension == 1
    assert rref_exact([], ambient).dimension == 0
    a, b = mono(E(1)), mono(E(2))
    s = rref_exact([a + b, a - b], ambient)
    assert s.dimension == 2 and s.contains(a)


def test_rref_refuses_outside_support():
    with pytest.raises(AmbientOverflow):
        rref_exact([mono(E(3))], [(Z5, (0,) * 4)])


vecs = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=6)


@given(vecs)
def test_rref_is_reduced_and_spans_inputs(rows):
    ambient = [((k,), ()) for k in range(4)]
    els = [AlgebraElement({((k,), ()): c for k, c in enumerate(r) if c}) for r in rows]
    s = rref_exact(els, ambient)
    assert list(s.pivots) == sorted(set(s.pivots))
    for r, p in zip(s.rows, s.pivots):
        assert r[p] == 1
        assert all(other[p] == 0 for other in s.rows if other is not r)
    assert all(s.contains(u) for u in els)
    span = EchelonSpan()
    for u in els:
        span.add(u)
    assert span.dimension == s.dimension


# -- ideal closure -----------------------------------------------------------------


def test_ideal_closure_from_one(d1):
    r = ideal_closure(d1, QuotientElement(d1.one()), PROBE, max_iter=32)
    assert r.stabilized and r.contains_one and r.window_coverage == 1
    assert r.iterations <= 32 and r.dimension == r.probe_size


def test_ideal_closure_certificate_checks(d1):
    rng = random.Random(5)
    keys = [k for k in PROBE.basis(d1._nat) if k != d1.center_key]
    g = random_from_keys(rng, keys)
    r = ideal_closure(d1, QuotientElement(g), PROBE)
    assert r.contains_one

    def op(b, v):
        return d1.project_quotient(d1.bracket(b, v)).rep

    assert evaluate_certificate(op, g, r.certificate) == d1.one()


def test_ideal_closure_rejects_zero(d1):
    with pytest.raises(ValueError):
        ideal_closure(d1, QuotientElement(d1.center()), PROBE)
    with pytest.raises(ValueError):
        ideal_closure(d1, QuotientElement(AlgebraElement()), PROBE)


def test_ambient_must_cover(d1):
    with pytest.raises(AmbientOverflow):
        ideal_closure(d1, QuotientElement(mono((2, 0, 0, 0, 0))), PROBE)
    small = Window.cube(5, 0, 0)
    with pytest.raises(AmbientOverflow):
        ideal_closure(d1, QuotientElement(d1.one()), PROBE, ambient=small)


def test_strict_mode_raises_on_escape(d1):
    probe = Window.cube(5, 1, 0)
    with pytest.raises(AmbientOverflow):
        ideal_closure(d1, QuotientElement(mono(E(3))), probe, strict=True)


def test_unstabilized_run_is_inconclusive(d1):
    r = ideal_closure(d1, QuotientElement(mono(E(1))), PROBE, max_iter=1)
    assert not r.stabilized and r.status == "inconclusive"


# -- submodule closure -------------------------------------------------------------


def test_submodule_closure_irreducible_vector(d1):
    ctx = ActionContext(d1.sig, desk1_module_irreducible(), alg=d1)
    r = submodule_closure(ctx, ModuleVector(mono(E(1)) + mono(E(2), (1, 0, 0, 0))), PROBE)
    assert r.stabilized and r.window_coverage == 1


def test_submodule_closure_trivial_line(d1):
    """With mu = e1 the vector matching the central line spans a one-dimensional submodule."""
    ctx = ActionContext(d1.sig, desk1_module_mu(), alg=d1)
    r = submodule_closure(ctx, ModuleVector(mono((-1, 0, 0, 0, 0))), PROBE)
    assert r.stabilized and r.dimension == 1 and r.window_coverage < 1


def test_submodule_closure_whole_ambient(d1):
    probe = Window.cube(5, 0, 0)
    ctx = ActionContext(d1.sig, desk1_module_irreducible(), alg=d1)
    r = submodule_closure(ctx, ModuleVector(d1.one()), probe)
    assert r.window_coverage == 1 and r.iterations <= 1
    with pytest.raises(ValueError):
        submodule_closure(ctx, ModuleVector(AlgebraElement()), probe)


# -- eigen_separate ----------------------------------------------------------------


def _ad1_setup(d1):
    ambient = PROBE.basis(d1._nat)
    full = rref_exact([AlgebraElement({k: 1}) for k in ambient], ambient)
    return (lambda w: d1.bracket(d1.one(), w)), ambient, full


def test_eigen_separate_examples(d1):
    T, ambient, full = _ad1_setup(d1)
    comps = eigen_separate(T, ambient, full, mono(E(5)) + mono(E(1)))
    assert sorted(map(str, comps)) == sorted(map(str, [mono(E(5)), mono(E(1))]))
    assert eigen_separate(T, ambient, full, mono(E(5))) == [mono(E(5))]
    assert eigen_separate(T, ambient, full, AlgebraElement()) == []


def test_eigen_separate_generalized_components(d1):
    T, ambient, full = _ad1_setup(d1)
    u = mono(E(5), (0, 1, 0, 0)) + mono(E(1)) + mono((-1, 0, 0, 0, 1), c=3)
    comps = eigen_separate(T, ambient, full, u)
    total = AlgebraElement()
    for c in comps:
        total = total + c
        lam = d1.char_values(next(iter(c.terms))[0])[1]
        assert d1.nilpotency_witness(lam, c).is_zero()
    assert total == u


def test_eigen_separate_refuses_irrational_spectrum():
    a, b = mono(E(1)), mono(E(2))
    ambient = sorted(list(a.terms) + list(b.terms))
    full = rref_exact([a, b], ambient)

    def rot(w):  # x^a -> x^b -> -x^a, eigenvalues +-i
        return AlgebraElement({next(iter(b.terms)): w.coefficient(next(iter(a.terms))),
                               next(iter(a.terms)): -w.coefficient(next(iter(b.terms)))})

    with pytest.raises(UnsupportedOperator):
        eigen_separate(rot, ambient, full, a)


def test_eigen_separate_refuses_escape(d1):
    ambient = [(Z5, (0,) * 4)]
    full = rref_exact([d1.one()], ambient)
    with pytest.raises(UnsupportedOperator):
        eigen_separate(lambda w: d1.shift(E(1), w), ambient, full, d1.one())


# -- derived window ----------------------------------------------------------------


def test_derived_window_single_point(d2):
    r = derived_subalgebra_window(d2, Window.cube(6, 0, 0), margin=0)
    assert r.dimension == 0


def test_derived_window_needs_point_mask(d1):
    with pytest.raises(ValueError):
        derived_subalgebra_window(d1, Window.cube(5, 0, 0))


def test_widen_shifted_moves_only_shifted_coordinates(d2):
    w = widen_shifted(d2, Window.cube(6, 1, 0), 1)
    # shifts 0, eps = e3 and eps + sigma = 2e3 - e4 touch coordinates 3 and 4
    assert w.group_box == ((-1, 1), (-1, 1), (-2, 2), (-2, 2), (-1, 1), (-1, 1))
