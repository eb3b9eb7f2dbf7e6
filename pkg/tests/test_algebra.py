import pytest
from hypothesis import given, strategies as st

from twistham.algebra import HamiltonianAlgebra, commutator_residual, jacobi_residual, leibniz_residual
from twistham.elements import AlgebraElement
from twistham.instances import all_nat, desk1, desk2
from twistham.lattice import ConfigurationError, unit_vector, vadd

from strategies import elements, keys, monomials

A1 = HamiltonianAlgebra(desk1())
A2 = HamiltonianAlgebra(desk2())
AN = HamiltonianAlgebra(all_nat())
ALGS = {"desk1": A1, "desk2": A2, "allnat": AN}
E = lambda k: unit_vector(5, k - 1)  # noqa: E731
Z = (0,) * 5
NEG = lambda a: tuple(-x for x in a)  # noqa: E731


def I(alg, p, a=1):  # noqa: E743
    return alg.unit_index(p, a)


def test_multiply_examples():
    a = A1
    assert a.multiply(a.x(E(1)), a.x(E(2))) == a.x((1, 1, 0, 0, 0))
    u = a.x(E(1), I(a, 1)) + a.x(Z, coef=2)
    assert a.multiply(u, a.x(NEG(E(1)), I(a, 1))) == a.x(Z, I(a, 1, 2)) + a.x(NEG(E(1)), I(a, 1), 2)


@given(elements(A1))
def test_one_is_identity(u):
    assert A1.multiply(A1.one(), u) == u


def test_derive_examples():
    a = A1
    beta = E(1)  # phi_2(e1) = 0
    assert a.derive(2, a.x(beta, I(a, 2))) == a.x(beta)
    assert a.derive(1, a.x(E(3))) == a.x(E(3))
    with pytest.raises(ValueError):
        a.derive(5, a.one())


def test_mask_is_enforced():
    with pytest.raises(ConfigurationError):
        A1.x(Z, I(A1, 3))  # slot 3 is POINT in DESK-1
    with pytest.raises(ConfigurationError):
        A1.bracket_derivation_form(AlgebraElement({((0, 0), (0,)): 1}), A1.one())


def test_bracket_examples_both_routes():
    a = A1
    eps = a.epsilon
    cases = [
        (a.x(eps), a.x(NEG(eps), I(a, 2)), a.x(Z, coef=2)),
        (a.one(), a.x(E(5), I(a, 2)), a.x(E(5), I(a, 2)) + a.x(E(5))),
        (a.x(NEG(E(5))), a.x(E(5), I(a, 1)), a.x(Z, I(a, 1), 2) + a.x(Z)),
    ]
    for u, v, want in cases:
        assert a.bracket_derivation_form(u, v) == want
        assert a.bracket_structure_constants(u, v) == want


def test_degenerate_pair_brackets_to_zero():
    # Rad_phi meets the joint kernel only in 0 for DESK-1
    assert A1.bracket(A1.one(), A1.one()).is_zero()


@pytest.mark.parametrize("name", sorted(ALGS))
@given(data=st.data())
def test_routes_agree(name, data):
    alg = ALGS[name]
    u, v = data.draw(elements(alg)), data.draw(elements(alg))
    assert alg.bracket_derivation_form(u, v) == alg.bracket_structure_constants(u, v)


@pytest.mark.parametrize("name", sorted(ALGS))
@given(data=st.data())
def test_antisymmetry_and_jacobi(name, data):
    alg = ALGS[name]
    u, v, w = (data.draw(elements(alg, max_terms=2)) for _ in range(3))
    assert (alg.bracket(u, v) + alg.bracket(v, u)).is_zero()
    assert alg.bracket(u, u).is_zero()
    assert jacobi_residual(alg, u, v, w).is_zero()


@pytest.mark.parametrize("name", sorted(ALGS))
@given(data=st.data())
def test_derivations_leibniz_and_commute(name, data):
    alg = ALGS[name]
    u, v = data.draw(elements(alg)), data.draw(elements(alg))
    for p in range(1, alg.width + 1):
        assert leibniz_residual(alg, p, u, v).is_zero()
        for q in range(1, alg.width + 1):
            assert commutator_residual(alg, p, q, u).is_zero()


@given(keys(A1), keys(A1))
def test_bracket_is_graded_local(k1, k2):
    """[x^a, x^b] lives in groups a+b, a+b+eps and a+b+eps+sigma_s."""
    a, b = k1[0], k2[0]
    s = vadd(a, b)
    allowed = {s, vadd(s, A1.epsilon)} | {vadd(vadd(s, A1.epsilon), sg) for sg in A1.sig.sigmas}
    out = A1.bracket_monomials(k1, k2)
    assert {g for (g, _) in out.terms} <= allowed
    assert out.degree() <= sum(k1[1]) + sum(k2[1])


@pytest.mark.parametrize("name", ["desk1", "allnat"])
@given(data=st.data())
def test_top_terms_are_exact(name, data):
    """top_terms gives exactly the part of the bracket at index i+j."""
    alg = ALGS[name]
    k1, k2 = data.draw(keys(alg)), data.draw(keys(alg))
    top_index = vadd(k1[1], k2[1])
    full = {k: c for k, c in alg.bracket_monomials(k1, k2).terms.items() if k[1] == top_index}
    assert {k: c for k, c in alg.top_terms(k1, k2).items() if c} == full


@given(monomials(A1))
def test_center_is_central(v):
    assert A1.bracket(A1.center(), v).is_zero()


def test_quotient_examples():
    a = A1
    c = a.center()
    assert not a.project_quotient(c)
    u = a.x(E(1))
    assert a.project_quotient(u).rep == u
    assert a.project_quotient(c.scale(3) + a.one()).rep == a.one()
    zero = a.project_quotient(c)
    assert not a.bracket_quotient(zero, a.project_quotient(u))
    q = a.bracket_quotient(a.project_quotient(a.x(a.epsilon)), a.project_quotient(a.x(NEG(a.epsilon), I(a, 2))))
    assert q.rep == a.x(Z, coef=2)


@given(elements(A1), elements(A1), elements(A1))
def test_quotient_jacobi(u, v, w):
    a = A1
    qu, qv, qw = (a.project_quotient(x) for x in (u, v, w))
    br = a.bracket_quotient
    r = br(qu, br(qv, qw)).rep + br(qv, br(qw, qu)).rep + br(qw, br(qu, qv)).rep
    assert not a.project_quotient(r)


def test_ad1_split_example():
    a = A1
    parts = a.ad1_spectral_split(a.x(E(5)) + a.x(E(1)))
    assert parts == {0: a.x(E(1)), 1: a.x(E(5))}
    assert len(a.ad1_spectral_split(a.x(E(5), I(a, 2)))) == 1
    with pytest.raises(ValueError):
        a.ad1_spectral_split(a.x(E(5), I(a, 2, 2)), bound=1)


@given(elements(A1, max_terms=4))
def test_ad1_split_sums_back_and_is_nilpotent(u):
    parts = A1.ad1_spectral_split(u)
    total = AlgebraElement()
    for lam, comp in parts.items():
        total = total + comp
        assert A1.nilpotency_witness(lam, comp).is_zero()
    assert total == u
