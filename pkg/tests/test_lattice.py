import dataclasses

import pytest
from hypothesis import given, strategies as st

from twistham.instances import desk1, desk1_module_irreducible, desk1_module_mu, desk2
from twistham.lattice import (
    Character,
    ConfigurationError,
    ModuleSignature,
    SemigroupMask,
    SkewForm,
    eval_form,
    radical_basis,
    solve_mu,
    unit_vector,
    validate_module_signature,
    validate_signature,
)

E = lambda k, m=5: unit_vector(m, k - 1)  # noqa: E731
vec5 = st.tuples(*[st.integers(-5, 5)] * 5)


def test_eval_form_examples():
    phi = SkewForm.standard_pair(5)
    assert eval_form(phi, E(1), E(2)) == 1
    assert eval_form(phi, (1, 1, 0, 0, 0), E(2)) == 1


@given(vec5, vec5)
def test_eval_form_antisymmetric(a, b):
    phi = SkewForm(((0, 1, 2, 0, 0), (-1, 0, 0, 3, 0), (-2, 0, 0, 0, 1), (0, -3, 0, 0, 0), (0, 0, -1, 0, 0)))
    assert eval_form(phi, a, a) == 0
    assert eval_form(phi, a, b) == -eval_form(phi, b, a)


def test_eval_form_dimension_mismatch():
    with pytest.raises(ConfigurationError):
        eval_form(SkewForm.standard_pair(5), (1, 0), (0, 1))


def test_skew_form_names_bad_entry():
    with pytest.raises(ConfigurationError, match=r"\(1,2\)"):
        SkewForm(((0, 1), (1, 0)))


def test_radical_basis_examples():
    assert radical_basis(SkewForm.standard_pair(5)) == [E(3), E(4), E(5)]
    assert radical_basis(SkewForm.zero(2)) == [(1, 0), (0, 1)]
    assert radical_basis(SkewForm.standard_pair(2)) == []


def test_mask_parsing():
    assert SemigroupMask.of("NNPN").nat_slots == (0, 1, 3)
    assert SemigroupMask.of("PPPP").trivial
    with pytest.raises(ConfigurationError):
        SemigroupMask.of("NQ")


def test_desk_instances_validate():
    for sig in (desk1(), desk2(), desk1("NNNN")):
        rep = validate_signature(sig)
        assert rep.passed, rep.names_failed()


def test_validate_epsilon_unit():
    sig = dataclasses.replace(desk1(), epsilon=(0, 0, 2, 0, 0))
    assert validate_signature(sig).names_failed() == ["epsilon-unit"]


def test_validate_witness_space_empty():
    s = desk1()
    sig = dataclasses.replace(s, chars=s.chars[:3] + (s.chars[2],))
    rep = validate_signature(sig)
    assert not rep["witness[4]"].passed
    assert rep["witness[4]"].witness is None


def test_validate_is_deterministic():
    assert validate_signature(desk1()) == validate_signature(desk1())


def test_all_point_with_vanishing_character_fails():
    s = desk1("NNPP")
    assert "nondegenerate-slot[4]" in validate_signature(s).names_failed()


@pytest.mark.parametrize("f, ok", [
    (Character.zero(5), True),
    (Character((0, -1, 0, 0, 0)), True),  # phi(., e1)
    (Character((0, 0, 1, 0, 0)), False),
])
def test_validate_module_signature(f, ok):
    rep = validate_module_signature(desk1(), ModuleSignature((0, 0, 0, 0), f))
    assert rep.passed is ok
    if not ok:
        assert tuple(rep.failures()[0].witness) == E(3)


def test_solve_mu_examples():
    sig = desk1()
    assert solve_mu(sig, desk1_module_mu()).mu == E(1)
    assert not solve_mu(sig, desk1_module_irreducible()).exists
    assert solve_mu(sig, ModuleSignature((0, 0, 0, 0), Character.zero(5))).mu == (0,) * 5


@given(vec5)
def test_solve_mu_recovers_constructed_mu(mu):
    sig = desk1()
    xi = tuple(ch(mu) for ch in sig.chars)
    f = Character(tuple(sig.phi(E(k), mu) for k in range(1, 6)))
    sol = solve_mu(sig, ModuleSignature(xi, f))
    assert sol.exists
    assert tuple(ch(sol.mu) for ch in sig.chars) == xi
    assert all(sig.phi(E(k), sol.mu) == f(E(k)) for k in range(1, 6))


def test_solve_mu_non_integral():
    # chars[0](mu) = mu_3 must be 1/2
    sol = solve_mu(desk1(), ModuleSignature(("1/2", 0, 0, 0), Character.zero(5)))
    assert sol.status == "non-integral" and not sol.exists
