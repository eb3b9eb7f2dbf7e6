"""Exact arithmetic in the twisted Hamiltonian algebra and its quotient.

Two bracket routes are kept side by side on purpose:

* :meth:`HamiltonianAlgebra.bracket_derivation_form` composes ``multiply``,
  ``derive`` and the skew form per pair of graded components;
* :meth:`HamiltonianAlgebra.bracket_structure_constants` expands the bracket
  of two monomials into at most ``4n + 1`` terms in closed form.

They must agree exactly; the second one is the fast kernel used everywhere
else (closures, property suites).
"""

from __future__ import annotations

from functools import lru_cache
from operator import add
from typing import Dict, Iterable, List, Tuple

from .elements import AlgebraElement, BasisIndex, linear_combination
from .exact import normalize
from .lattice import AlgebraSignature, ConfigurationError, GroupVector, vadd, vneg

MultiIndex = Tuple[int, ...]


def lower(index: MultiIndex, *slots: int):
    """``index`` minus the unit vectors of ``slots``; None if an entry would go negative."""
    out = list(index)
    for p in slots:
        out[p] -= 1
        if out[p] < 0:
            return None
    return tuple(out)


class QuotientElement:
    """Canonical representative of u + Q x^{-eps,0}: that coefficient is zero."""

    __slots__ = ("rep",)

    def __init__(self, rep: AlgebraElement):
        self.rep = rep

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        if isinstance(other, QuotientElement):
            return self.rep == other.rep
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"QuotientElement({self.rep!s})"


class HamiltonianAlgebra:
    """The algebra attached to a (not necessarily validated) signature."""

    def __init__(self, sig: AlgebraSignature, cache_size: int = 1 << 18):
        self.sig = sig
        self.n = sig.n
        self.m = sig.m
        self.width = 2 * sig.n
        self.epsilon: GroupVector = sig.epsilon
        self.center_key: BasisIndex = (vneg(sig.epsilon), (0,) * self.width)
        self._nat = tuple(sig.mask.is_nat(p) for p in range(self.width))
        # group shifts of the paired-slot terms: eps + sigma_{2s+1}
        self._pair_shift = tuple(vadd(sig.epsilon, s) for s in sig.sigmas)
        self._chars = lru_cache(maxsize=None)(self._char_values_uncached)
        self._phi_row = lru_cache(maxsize=None)(sig.phi.row)
        self._mono = lru_cache(maxsize=cache_size)(self._bracket_monomials)

    # -- construction helpers -------------------------------------------------

    def zero_index(self) -> MultiIndex:
        return (0,) * self.width

    def unit_index(self, p: int, a: int = 1) -> MultiIndex:
        """``a`` in 1-based slot ``p``, zero elsewhere."""
        return tuple(a if q == p - 1 else 0 for q in range(self.width))

    def x(self, alpha, index=None, coef=1) -> AlgebraElement:
        index = self.zero_index() if index is None else tuple(index)
        u = AlgebraElement.monomial(tuple(alpha), index, coef)
        self.check(u)
        return u

    def one(self) -> AlgebraElement:
        return AlgebraElement.monomial((0,) * self.m, self.zero_index())

    def center(self) -> AlgebraElement:
        """x^{-eps,0}."""
        return AlgebraElement.monomial(*self.center_key)

    def check(self, u: AlgebraElement) -> None:
        for (a, i) in u.terms:
            if len(a) != self.m or len(i) != self.width:
                raise ConfigurationError(
                    f"term x[{a}|{i}] does not fit rank {self.m} with {self.width} index slots"
                )
            for p, e in enumerate(i):
                if e < 0 or (e and not self._nat[p]):
                    raise ConfigurationError(f"multi-index {i} not allowed by the mask at slot {p + 1}")

    def _char_values_uncached(self, a: GroupVector) -> Tuple:
        return self.sig.char_values(a)

    def char_values(self, a: GroupVector) -> Tuple:
        return self._chars(a)

    def form(self, a: GroupVector, b: GroupVector):
        row = self._phi_row(a)
        return normalize(sum((r * x for r, x in zip(row, b) if x), 0))

    # -- product and derivations ----------------------------------------------

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        acc: Dict = {}
        for (a, i), c in u.terms.items():
            for (b, j), d in v.terms.items():
                key = (vadd(a, b), vadd(i, j))
                acc[key] = acc.get(key, 0) + c * d
        return AlgebraElement.from_dict_accumulate(acc)

    def derive(self, p: int, u: AlgebraElement) -> AlgebraElement:
        """The derivation for 1-based slot ``p``."""
        if not 1 <= p <= self.width:
            raise ValueError(f"derivation index {p} outside 1..{self.width}")
        q = p - 1
        acc: Dict = {}
        for (a, i), c in u.terms.items():
            w = self._chars(a)[q]
            if w:
                acc[(a, i)] = acc.get((a, i), 0) + w * c
            if i[q]:
                key = (a, lower(i, q))
                acc[key] = acc.get(key, 0) + i[q] * c
        return AlgebraElement.from_dict_accumulate(acc)

    def shift(self, g: GroupVector, u: AlgebraElement) -> AlgebraElement:
        """Multiplication by x^{g,0}."""
        return AlgebraElement({(vadd(g, a), i): c for (a, i), c in u.terms.items()}, _trusted=True)

    # -- brackets --------------------------------------------------------------

    def poisson_part(self, u: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
        """x^{eps,0} ( sum_s x^{sigma,0}(d_{2s+1}u d_{2s+2}w - d_{2s+1}w d_{2s+2}u) + phi(a,b) u w ).

        Computed per pair of graded components.
        """
        out = AlgebraElement()
        ug, wg = u.groups(), w.groups()
        for a, ua in ug.items():
            for b, wb in wg.items():
                inner = self.multiply(ua, wb).scale(self.form(a, b))
                for s, sigma in enumerate(self.sig.sigmas, start=1):
                    p, q = 2 * s + 1, 2 * s + 2
                    t = self.multiply(self.derive(p, ua), self.derive(q, wb)) - self.multiply(
                        self.derive(p, wb), self.derive(q, ua)
                    )
                    inner = inner + self.shift(sigma, t)
                out = out + self.shift(self.epsilon, inner)
        return out

    def bracket_derivation_form(self, u: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
        self.check(u)
        self.check(w)
        d1u, d1w = self.derive(1, u) + u, self.derive(1, w) + w
        return (
            self.poisson_part(u, w)
            + self.multiply(d1u, self.derive(2, w))
            - self.multiply(d1w, self.derive(2, u))
        )

    def _bracket_monomials(self, k1: BasisIndex, k2: BasisIndex) -> Tuple[Tuple[BasisIndex, object], ...]:
        (al, i), (be, j) = k1, k2
        A, B = self._chars(al), self._chars(be)
        g = tuple(map(add, al, be))
        k = tuple(map(add, i, j))
        acc: Dict = {}

        def put(group, idx, c):
            if c and idx is not None:
                key = (group, idx)
                acc[key] = acc.get(key, 0) + c

        put(g, k, (A[0] + 1) * B[1] - A[1] * (B[0] + 1))
        if i[0] or j[0]:
            put(g, lower(k, 0), i[0] * B[1] - j[0] * A[1])
        if i[1] or j[1]:
            put(g, lower(k, 1), j[1] * (A[0] + 1) - i[1] * (B[0] + 1))
            if i[0] or j[0]:
                put(g, lower(k, 0, 1), i[0] * j[1] - i[1] * j[0])
        for s, h in enumerate(self._pair_shift, start=1):
            P, Q = 2 * s, 2 * s + 1
            gs = tuple(map(add, g, h))
            put(gs, k, A[P] * B[Q] - A[Q] * B[P])
            if i[P] or j[P]:
                put(gs, lower(k, P), i[P] * B[Q] - j[P] * A[Q])
            if i[Q] or j[Q]:
                put(gs, lower(k, Q), j[Q] * A[P] - i[Q] * B[P])
                if i[P] or j[P]:
                    put(gs, lower(k, P, Q), i[P] * j[Q] - i[Q] * j[P])
        put(tuple(map(add, g, self.epsilon)), k, self.form(al, be))
        return tuple((key, normalize(c)) for key, c in acc.items() if c)

    def top_terms(self, k1: BasisIndex, k2: BasisIndex) -> Dict[BasisIndex, object]:
        """Terms of [x^{a,i}, x^{b,j}] with index exactly i + j (all others have smaller index).

        Cheap and exact, so a closure can see that a bracket leaves its
        window without expanding it.
        """
        (al, i), (be, j) = k1, k2
        A, B = self._chars(al), self._chars(be)
        g = tuple(map(add, al, be))
        k = tuple(map(add, i, j))
        out: Dict = {}
        for group, c in self._top_groups(g, A, B, al, be):
            if c:
                out[(group, k)] = out.get((group, k), 0) + c
        return out

    def _top_groups(self, g, A, B, al, be):
        yield g, (A[0] + 1) * B[1] - A[1] * (B[0] + 1)
        for s, h in enumerate(self._pair_shift, start=1):
            P, Q = 2 * s, 2 * s + 1
            yield tuple(map(add, g, h)), A[P] * B[Q] - A[Q] * B[P]
        yield tuple(map(add, g, self.epsilon)), self.form(al, be)

    def bracket_monomials(self, k1: BasisIndex, k2: BasisIndex) -> AlgebraElement:
        return AlgebraElement(dict(self._mono(k1, k2)), _trusted=True)

    def bracket_structure_constants(self, u: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
        self.check(u)
        self.check(w)
        return self.bracket(u, w)

    def bracket(self, u: AlgebraElement, w: AlgebraElement) -> AlgebraElement:
        """Unchecked fast bracket (structure-constant route)."""
        acc: Dict = {}
        mono = self._mono
        for k1, c in u.terms.items():
            for k2, d in w.terms.items():
                cd = c * d
                for key, e in mono(k1, k2):
                    acc[key] = acc.get(key, 0) + cd * e
        return AlgebraElement.from_dict_accumulate(acc)

    def ad(self, u: AlgebraElement, times: int, w: AlgebraElement) -> AlgebraElement:
        for _ in range(times):
            w = self.bracket(u, w)
        return w

    # -- quotient ----------------------------------------------------------------

    def project_quotient(self, u: AlgebraElement) -> QuotientElement:
        if self.center_key in u.terms:
            t = dict(u.terms)
            del t[self.center_key]
            return QuotientElement(AlgebraElement(t, _trusted=True))
        return QuotientElement(u)

    def bracket_quotient(self, u: QuotientElement, w: QuotientElement) -> QuotientElement:
        return self.project_quotient(self.bracket(u.rep, w.rep))

    # -- ad_1 decomposition ------------------------------------------------------

    def ad1_spectral_split(self, u: AlgebraElement, bound: int | None = None) -> Dict[object, AlgebraElement]:
        """Generalized eigencomponents of ad(1), keyed by eigenvalue.

        ad(1) acts on x^{b,j} as phi_2(b) plus a nilpotent lowering of j_2, so
        the components are read off by grouping terms on phi_2 of the group part.
        """
        if bound is not None and u.degree() > bound:
            raise ValueError(f"element degree {u.degree()} exceeds bound {bound}")
        parts: Dict[object, Dict] = {}
        for (a, i), c in u.terms.items():
            parts.setdefault(self._chars(a)[1], {})[(a, i)] = c
        return {lam: AlgebraElement(t, _trusted=True) for lam, t in sorted(parts.items())}

    def nilpotency_witness(self, lam, component: AlgebraElement) -> AlgebraElement:
        """(ad(1) - lam)^d applied to ``component`` with d = 1 + max j_2; zero when the split is right."""
        d = 1 + max((i[1] for (_, i) in component.terms), default=0)
        one = self.one()
        w = component
        for _ in range(d):
            w = self.bracket(one, w) - w.scale(lam)
        return w


def monomials(alg: HamiltonianAlgebra, keys: Iterable[BasisIndex]) -> List[AlgebraElement]:
    return [AlgebraElement.monomial(a, i) for a, i in keys]


def jacobi_residual(alg: HamiltonianAlgebra, u, v, w, bracket=None) -> AlgebraElement:
    br = bracket or alg.bracket
    return br(u, br(v, w)) + br(v, br(w, u)) + br(w, br(u, v))


def commutator_residual(alg: HamiltonianAlgebra, p: int, q: int, u: AlgebraElement) -> AlgebraElement:
    return alg.derive(p, alg.derive(q, u)) - alg.derive(q, alg.derive(p, u))


def leibniz_residual(alg: HamiltonianAlgebra, p: int, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    lhs = alg.derive(p, alg.multiply(u, v))
    return lhs - alg.multiply(alg.derive(p, u), v) - alg.multiply(u, alg.derive(p, v))


__all__ = [
    "HamiltonianAlgebra",
    "QuotientElement",
    "commutator_residual",
    "jacobi_residual",
    "leibniz_residual",
    "linear_combination",
    "lower",
    "monomials",
]
