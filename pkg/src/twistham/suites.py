"""Exact property suites over seeded samples.

Every suite returns a list of :class:`CaseResult` in sample order, so two
runs with the same inputs and seed produce the same list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .algebra import HamiltonianAlgebra, commutator_residual, jacobi_residual, leibniz_residual
from .closure import Window
from .elements import AlgebraElement, BasisIndex, render
from .instances import adjoint_module
from .lattice import ModuleSignature, solve_mu
from .module import ActionContext, ModuleVector, check_intertwiner, check_representation
from .sampling import random_poly
from .twist import (
    block_bracket,
    block_oracle,
    contact_bracket,
    contact_oracle,
    hamiltonian_oracle,
    twist,
    twist_jacobi_residual,
    verify_oracle,
)


@dataclass
class CaseResult:
    suite: str
    case_id: str
    passed: bool
    residual: str = "0"
    inputs: Optional[Dict[str, str]] = None
    certificate: object = None
    detail: Dict[str, object] = field(default_factory=dict)
    outcome: Optional[str] = None  # overrides pass/fail, e.g. "inconclusive"

    @property
    def status(self) -> str:
        if self.outcome is not None:
            return self.outcome
        return "pass" if self.passed else "fail"


def _case(suite, name, k, residual, inputs) -> CaseResult:
    ok = not residual
    return CaseResult(suite, f"{name}#{k:04d}", ok, render(residual) if not ok else "0", None if ok else inputs)


class WindowSampler:
    """Group part uniform over the box, multi-index uniform over the allowed indices up to the cap."""

    def __init__(self, alg: HamiltonianAlgebra, window: Window, rng: random.Random):
        self.alg, self.rng = alg, rng
        self.box = window.group_box
        self.indices = sorted({i for _, i in Window(tuple((0, 0) for _ in range(alg.m)), window.degree_cap).basis(alg._nat)})

    def key(self) -> BasisIndex:
        rng = self.rng
        return tuple(rng.randint(lo, hi) for lo, hi in self.box), rng.choice(self.indices)

    def monomial(self) -> AlgebraElement:
        return AlgebraElement({self.key(): 1}, _trusted=True)

    def element(self, terms: int = 2) -> AlgebraElement:
        acc = {}
        for _ in range(terms):
            k = self.key()
            acc[k] = acc.get(k, 0) + (self.rng.choice([-3, -2, -1, 1, 2, 3]))
        return AlgebraElement.from_dict_accumulate(acc)


def _names(**kw) -> Dict[str, str]:
    return {k: render(v) if isinstance(v, AlgebraElement) else str(v) for k, v in kw.items()}


def suite_jacobi(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int) -> List[CaseResult]:
    s = WindowSampler(alg, window, rng)
    out = []
    for k in range(samples):
        u, v, w = s.monomial(), s.monomial(), s.monomial()
        out.append(_case("jacobi", "antisymmetry", k, alg.bracket(u, v) + alg.bracket(v, u), _names(u=u, v=v)))
        out.append(_case("jacobi", "jacobi", k, jacobi_residual(alg, u, v, w), _names(u=u, v=v, w=w)))
    return out


def suite_agreement(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int) -> List[CaseResult]:
    s = WindowSampler(alg, window, rng)
    out = []
    for k in range(samples):
        u, v = s.monomial(), s.monomial()
        r = alg.bracket_derivation_form(u, v) - alg.bracket_structure_constants(u, v)
        out.append(_case("agreement", "routes", k, r, _names(u=u, v=v)))
    return out


def suite_leibniz(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int) -> List[CaseResult]:
    s = WindowSampler(alg, window, rng)
    width = alg.width
    out = []
    for k in range(samples):
        u, v = s.element(), s.element()
        for p in range(1, width + 1):
            out.append(_case("leibniz", f"leibniz-d{p}", k, leibniz_residual(alg, p, u, v), _names(u=u, v=v)))
        for p in range(1, width + 1):
            for q in range(p + 1, width + 1):
                out.append(_case("leibniz", f"commute-d{p}-d{q}", k, commutator_residual(alg, p, q, u), _names(u=u)))
    return out


def suite_center(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int,
                 msig: Optional[ModuleSignature] = None) -> List[CaseResult]:
    s = WindowSampler(alg, window, rng)
    center = alg.center()
    ctx = ActionContext(alg.sig, msig, alg=alg) if msig is not None else None
    out = []
    for k in range(samples):
        v = s.monomial()
        out.append(_case("center", "central", k, alg.bracket(center, v), _names(v=v)))
        if ctx is not None:
            u, w = s.element(), s.element()
            c = rng.choice([-2, -1, 1, 2])
            r = ctx.act_element(u + center.scale(c), w) - ctx.act_element(u, w)
            out.append(_case("center", "action-well-defined", k, r, _names(u=u, v=w, c=c)))
    return out


def suite_representation(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int,
                         msig: ModuleSignature) -> List[CaseResult]:
    ctx = ActionContext(alg.sig, msig, alg=alg)
    adjoint = tuple(msig.xi) == (1,) + (0,) * (alg.width - 1) and msig.f.is_zero()
    s = WindowSampler(alg, window, rng)
    out = []
    for k in range(samples):
        u, w, v = s.monomial(), s.monomial(), s.monomial()
        r = check_representation(ctx, alg.project_quotient(u), alg.project_quotient(w), ModuleVector(v))
        out.append(_case("representation", "axiom", k, r, _names(u=u, w=w, v=v)))
        r = ctx.act_element(u, v) - ctx.act_derivation_form(u, v)
        out.append(_case("representation", "routes", k, r, _names(u=u, v=v)))
        if adjoint:
            out.append(_case("representation", "adjoint", k, ctx.act_element(u, v) - alg.bracket(u, v), _names(u=u, v=v)))
    return out


def suite_intertwiner(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int,
                      msig: ModuleSignature, mu=None) -> List[CaseResult]:
    """psi(u.v) = u.psi(v) between the (xi, f) module and the adjoint-type one."""
    if mu is None:
        sol = solve_mu(alg.sig, msig)
        if not sol.exists:
            raise ValueError(f"no mu for this module ({sol.status})")
        mu = sol.mu
    src = ActionContext(alg.sig, msig, alg=alg)
    tgt = ActionContext(alg.sig, adjoint_module(alg.sig), alg=alg)
    s = WindowSampler(alg, window, rng)
    out = []
    for k in range(samples):
        u, v = s.monomial(), s.monomial()
        r = check_intertwiner(src, tgt, mu, alg.project_quotient(u), ModuleVector(v))
        out.append(_case("intertwiner", "psi", k, r, _names(u=u, v=v, mu=mu)))
    return out


def suite_twist(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int) -> List[CaseResult]:
    """The main bracket is the twist of its own Poisson part (c = 1)."""
    oracle = hamiltonian_oracle(alg)
    s = WindowSampler(alg, window, rng)
    out = []
    triples = []
    for k in range(samples):
        u, v, w = s.element(), s.element(), s.element()
        triples.append((u, v, w))
        out.append(_case("twist", "equals-bracket", k, twist(oracle, u, v) - alg.bracket(u, v), _names(u=u, v=v)))
    out.extend(_oracle_cases("twist", oracle, triples[: max(1, min(len(triples), 50))]))
    return out


def _oracle_cases(suite, oracle, triples) -> List[CaseResult]:
    rep = verify_oracle(oracle, triples)
    return [
        CaseResult(suite, f"oracle-{c.name}", c.passed, "0" if c.passed else c.witness.get("residual", "?"),
                   None if c.passed else {k: v for k, v in c.witness.items() if k != "residual"})
        for c in rep.checks
    ]


def suite_block(alg: HamiltonianAlgebra, window: Window, rng: random.Random, samples: int) -> List[CaseResult]:
    oracle = block_oracle(alg)
    s = WindowSampler(alg, window, rng)
    out = []
    triples = []
    for k in range(samples):
        u, v, w = s.element(), s.element(), s.element()
        triples.append((u, v, w))
        out.append(_case("block", "jacobi", k, twist_jacobi_residual(oracle, u, v, w), _names(u=u, v=v, w=w)))
        out.append(_case("block", "direct-formula", k, twist(oracle, u, v) - block_bracket(alg, u, v), _names(u=u, v=v)))
    out.extend(_oracle_cases("block", oracle, triples[:50]))
    return out


def suite_contact(rng: random.Random, samples: int, n: int = 1, degree_cap: int = 6,
                  max_degree: int = 2) -> List[CaseResult]:
    """Contact type on Q[x_1..x_{2n+1}]; inputs of degree <= max_degree keep every product under the cap."""
    if 3 * max_degree > degree_cap + 2:
        raise ValueError(f"inputs of degree {max_degree} can overflow cap {degree_cap} in a Jacobi triple")
    oracle, P = contact_oracle(n, degree_cap)
    out = []
    triples = []
    for k in range(samples):
        u, v, w = (random_poly(rng, P, max_degree) for _ in range(3))
        triples.append((u, v, w))
        ins = {"u": str(u), "v": str(v), "w": str(w)}
        r = twist_jacobi_residual(oracle, u, v, w)
        out.append(CaseResult("contact", f"jacobi#{k:04d}", not r, str(r) if r else "0", None if not r else ins))
        r = twist(oracle, u, v) - contact_bracket(P, u, v)
        out.append(CaseResult("contact", f"direct-formula#{k:04d}", not r, str(r) if r else "0", None if not r else ins))
    out.extend(_oracle_cases("contact", oracle, triples[:50]))
    return out


SUITES: Dict[str, Callable] = {
    "jacobi": suite_jacobi,
    "agreement": suite_agreement,
    "leibniz": suite_leibniz,
    "center": suite_center,
    "representation": suite_representation,
    "intertwiner": suite_intertwiner,
    "twist": suite_twist,
    "contact": suite_contact,
    "block": suite_block,
}
MODULE_SUITES = {"representation", "intertwiner"}
