import dataclasses
import random

import pytest
from hypothesis import given, strategies as st

from twistham.algebra import HamiltonianAlgebra
from twistham.instances import all_nat, desk1, desk2
from twistham.sampling import random_element, random_poly
from twistham.suites import suite_contact
from twistham.twist import (
    IDENTITY_NAMES,
    TruncatedPolyAlgebra,
    TruncationError,
    block_bracket,
    block_oracle,
    contact_bracket,
    contact_oracle,
    hamiltonian_oracle,
    twist,
    twist_jacobi_residual,
    verify_oracle,
)

from strategies import elements

ALGS = [HamiltonianAlgebra(s) for s in (desk1(), desk2(), all_nat())]


def test_contact_examples():
    oracle, P = contact_oracle(1, 6)
    x1, x2, x3 = P.var(1), P.var(2), P.var(3)
    assert oracle.bracket(x1, x2) == P.const(1)
    assert oracle.bracket(x1, x3).is_zero()
    # (d1 - 2)(x1) d2(x3) - d2(x1)(d1 - 2)(x3) = (1 - 2) x1 * 1: the factor x1 stays
    assert twist(oracle, x1, x3) == -x1
    assert contact_bracket(P, x1, x3) == -x1
    assert twist(oracle, x1, x1).is_zero()


@pytest.mark.parametrize("n", [1, 2])
def test_contact_twist_is_lie_and_matches_direct_formula(n):
    oracle, P = contact_oracle(n, 6)
    rng = random.Random(n)
    trip = [tuple(random_poly(rng, P, 2) for _ in range(3)) for _ in range(50)]
    assert verify_oracle(oracle, trip).passed
    for u, v, w in trip:
        assert twist_jacobi_residual(oracle, u, v, w).is_zero()
        assert twist(oracle, u, v) == contact_bracket(P, u, v)
        assert (twist(oracle, u, v) + twist(oracle, v, u)).is_zero()


def test_truncation_is_never_silent():
    P = TruncatedPolyAlgebra(3, 6)
    x = P.var(1)
    x4 = P.mul(P.mul(x, x), P.mul(x, x))
    with pytest.raises(TruncationError):
        P.mul(x4, x4)
    with pytest.raises(ValueError):
        suite_contact(random.Random(0), 1, n=1, degree_cap=6, max_degree=3)


def test_squaring_d2_fails_leibniz_with_witness():
    oracle, P = contact_oracle(1, 6)
    bad = dataclasses.replace(oracle, d2=lambda f: P.mul(f, f))
    rng = random.Random(0)
    trip = [tuple(random_poly(rng, P, 1) for _ in range(3)) for _ in range(20)]
    rep = verify_oracle(bad, trip)
    assert not rep.passed
    assert "d2-product-leibniz" in rep.names_failed()
    w = rep["d2-product-leibniz"].witness
    assert set(w) == {"u", "v", "w", "residual"}


def test_verify_oracle_runs_every_identity():
    alg = ALGS[0]
    rep = verify_oracle(block_oracle(alg), [(alg.one(), alg.x((1, 0, 0, 0, 0)), alg.x((0, 0, 0, 0, 1)))])
    assert tuple(c.name for c in rep.checks) == IDENTITY_NAMES


@pytest.mark.parametrize("c", [1, -2, "3/7"])
def test_trivial_bracket_oracle_passes_for_any_c(c):
    alg = ALGS[0]
    oracle = dataclasses.replace(block_oracle(alg), c=c)
    rng = random.Random(3)
    trip = [tuple(random_element(rng, alg) for _ in range(3)) for _ in range(10)]
    assert verify_oracle(oracle, trip).passed


@pytest.mark.parametrize("k", range(3))
@given(data=st.data())
def test_block_twist(k, data):
    alg = ALGS[k]
    oracle = block_oracle(alg)
    u, v, w = (data.draw(elements(alg, max_terms=2)) for _ in range(3))
    assert twist(oracle, u, v) == block_bracket(alg, u, v)
    assert twist_jacobi_residual(oracle, u, v, w).is_zero()


@pytest.mark.parametrize("k", range(3))
@given(data=st.data())
def test_hamiltonian_bracket_is_a_twist(k, data):
    alg = ALGS[k]
    oracle = hamiltonian_oracle(alg)
    u, v, w = (data.draw(elements(alg, max_terms=2)) for _ in range(3))
    assert twist(oracle, u, v) == alg.bracket(u, v)
    assert verify_oracle(oracle, [(u, v, w)]).passed
