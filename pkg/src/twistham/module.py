"""The module structure on the algebra parametrized by (xi, f), and the shift isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

from .algebra import HamiltonianAlgebra, QuotientElement, lower
from .elements import AlgebraElement
from .exact import normalize
from .lattice import (
    AlgebraSignature,
    ConfigurationError,
    GroupVector,
    ModuleSignature,
    validate_module_signature,
    validate_signature,
    vadd,
    vsub,
)


@dataclass(frozen=True)
class ModuleVector:
    value: AlgebraElement

    def __bool__(self):
        return bool(self.value)


class ActionContext:
    """Validated (signature, module signature) pair together with its algebra."""

    def __init__(self, sig: AlgebraSignature, msig: ModuleSignature, alg: HamiltonianAlgebra | None = None,
                 cache_size: int = 1 << 18):
        rep = validate_signature(sig)
        if not rep.passed:
            raise ConfigurationError(f"invalid algebra signature: {rep.names_failed()}")
        mrep = validate_module_signature(sig, msig)
        if not mrep.passed:
            raise ConfigurationError(f"invalid module signature: {mrep.names_failed()}")
        self.sig, self.msig = sig, msig
        self.alg = alg if alg is not None and alg.sig == sig else HamiltonianAlgebra(sig)
        self.xi = msig.xi
        self._f = lru_cache(maxsize=None)(msig.f)
        self._mono = lru_cache(maxsize=cache_size)(self._act_monomials)

    def _act_monomials(self, k1, k2):
        """x^{a,i} acting on x^{b,j}, expanded term by term."""
        alg, xi = self.alg, self.xi
        (al, i), (be, j) = k1, k2
        A, B = alg.char_values(al), alg.char_values(be)
        acc: Dict = {}

        def pair(group, p, cp, q, cq, scale):
            # scale * (D_p u) * (D_q + cq) v where D_p u = (A[p] + cp) x^{a,i} + i_p x^{a,i-1_p}
            left = [((A[p] + cp), i)]
            if i[p]:
                left.append((i[p], lower(i, p)))
            right = [((B[q] + cq), j)]
            if j[q]:
                right.append((j[q], lower(j, q)))
            for c1, ii in left:
                if not c1:
                    continue
                for c2, jj in right:
                    if c2:
                        key = (group, vadd(ii, jj))
                        acc[key] = acc.get(key, 0) + scale * c1 * c2

        g = vadd(al, be)
        # (d_1 + 1)(u) (d_2 + xi_2)(v) - d_2(u) (d_1 + xi_1)(v)
        pair(g, 0, 1, 1, xi[1], 1)
        pair(g, 1, 0, 0, xi[0], -1)
        for s, sigma in enumerate(self.sig.sigmas, start=1):
            P, Q = 2 * s, 2 * s + 1
            gs = vadd(vadd(g, self.sig.epsilon), sigma)
            pair(gs, P, 0, Q, xi[Q], 1)
            pair(gs, Q, 0, P, xi[P], -1)
        c = alg.form(al, be) + self._f(al)
        if c:
            key = (vadd(g, self.sig.epsilon), vadd(i, j))
            acc[key] = acc.get(key, 0) + c
        return tuple((key, normalize(c)) for key, c in acc.items() if c)

    def top_terms(self, k1, k2) -> Dict:
        """Terms of x^{a,i} . x^{b,j} with index exactly i + j; see HamiltonianAlgebra.top_terms."""
        alg, xi = self.alg, self.xi
        (al, i), (be, j) = k1, k2
        A, B = alg.char_values(al), alg.char_values(be)
        g = vadd(al, be)
        k = vadd(i, j)
        eps = self.sig.epsilon
        cands = [(g, (A[0] + 1) * (B[1] + xi[1]) - A[1] * (B[0] + xi[0]))]
        for s, sigma in enumerate(self.sig.sigmas, start=1):
            P, Q = 2 * s, 2 * s + 1
            cands.append((vadd(vadd(g, eps), sigma), A[P] * (B[Q] + xi[Q]) - A[Q] * (B[P] + xi[P])))
        cands.append((vadd(g, eps), alg.form(al, be) + self._f(al)))
        out: Dict = {}
        for group, c in cands:
            if c:
                out[(group, k)] = out.get((group, k), 0) + c
        return out

    def act_element(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        """Action of the class of ``u`` on ``v`` (unchecked fast path)."""
        acc: Dict = {}
        mono = self._mono
        for k1, c in u.terms.items():
            for k2, d in v.terms.items():
                cd = c * d
                for key, e in mono(k1, k2):
                    acc[key] = acc.get(key, 0) + cd * e
        return AlgebraElement.from_dict_accumulate(acc)

    def act_derivation_form(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        """Same action assembled from ``multiply`` and ``derive``, per graded component pair."""
        alg, xi, sig = self.alg, self.xi, self.sig
        out = AlgebraElement()

        def dxi(p, w, c):
            return alg.derive(p, w) + w.scale(c)

        for a, ua in u.groups().items():
            for b, vb in v.groups().items():
                inner = alg.multiply(ua, vb).scale(alg.form(a, b) + self._f(a))
                for s, sigma in enumerate(sig.sigmas, start=1):
                    p, q = 2 * s + 1, 2 * s + 2
                    t = alg.multiply(alg.derive(p, ua), dxi(q, vb, xi[q - 1])) - alg.multiply(
                        alg.derive(q, ua), dxi(p, vb, xi[p - 1])
                    )
                    inner = inner + alg.shift(sigma, t)
                out = (
                    out
                    + alg.shift(sig.epsilon, inner)
                    + alg.multiply(dxi(1, ua, 1), dxi(2, vb, xi[1]))
                    - alg.multiply(alg.derive(2, ua), dxi(1, vb, xi[0]))
                )
        return out


def act(ctx: ActionContext, u: QuotientElement, v: ModuleVector) -> ModuleVector:
    ctx.alg.check(u.rep)
    ctx.alg.check(v.value)
    return ModuleVector(ctx.act_element(u.rep, v.value))


def check_representation(ctx: ActionContext, u: QuotientElement, w: QuotientElement, v: ModuleVector) -> AlgebraElement:
    """[u,w].v - u.(w.v) + w.(u.v); zero for a representation."""
    alg = ctx.alg
    a = ctx.act_element
    uw = alg.bracket_quotient(u, w).rep
    x = v.value
    return a(uw, x) - a(u.rep, a(w.rep, x)) + a(w.rep, a(u.rep, x))


def psi_map(mu: GroupVector, v: ModuleVector, epsilon: GroupVector) -> ModuleVector:
    """x^{b,j} -> x^{b + mu - eps, j}."""
    t = vsub(mu, epsilon)
    return ModuleVector(AlgebraElement({(vadd(a, t), i): c for (a, i), c in v.value.terms.items()}, _trusted=True))


def psi_inverse(mu: GroupVector, v: ModuleVector, epsilon: GroupVector) -> ModuleVector:
    t = vsub(epsilon, mu)
    return ModuleVector(AlgebraElement({(vadd(a, t), i): c for (a, i), c in v.value.terms.items()}, _trusted=True))


def check_intertwiner(src: ActionContext, tgt: ActionContext, mu: GroupVector, u: QuotientElement,
                      v: ModuleVector) -> AlgebraElement:
    """psi(u.v) - u.psi(v); zero when psi is a module map."""
    eps = src.sig.epsilon
    lhs = psi_map(mu, ModuleVector(src.act_element(u.rep, v.value)), eps).value
    rhs = tgt.act_element(u.rep, psi_map(mu, v, eps).value)
    return lhs - rhs
