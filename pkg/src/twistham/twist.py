"""The one-variable twist of a Poisson algebra with a quasi-derivation.

Given (A, [.,.], .), a derivation d2 of both structures and a
quasi-derivation d1 with constant c, the twisted bracket is

    [u, v]_1 = [u, v] + (d1 + c)(u) . d2(v) - d2(u) . (d1 + c)(v).

Elements of the carrier only need ``+``, ``-`` and ``.scale``.  Three
carriers ship here: truncated polynomials (contact type), the Hamiltonian
algebra with zero bracket (Block type) and the Hamiltonian algebra with its
own Poisson part, whose twist is the main bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .algebra import HamiltonianAlgebra, lower
from .elements import AlgebraElement
from .exact import fmt, normalize, to_rational
from .lattice import CheckResult, ValidationReport

Exponent = Tuple[int, ...]


class TruncationError(ArithmeticError):
    """A polynomial product would exceed the degree cap."""


@dataclass(frozen=True)
class Poly:
    """Rational polynomial as {exponent: coefficient}; zero coefficients never stored."""

    terms: Tuple[Tuple[Exponent, object], ...]
    nvars: int
    cap: int

    @classmethod
    def from_dict(cls, d: Dict[Exponent, object], nvars: int, cap: int) -> "Poly":
        items = tuple(sorted((e, normalize(c)) for e, c in d.items() if c))
        for e, _ in items:
            if sum(e) > cap:
                raise TruncationError(f"degree {sum(e)} exceeds cap {cap}")
        return cls(items, nvars, cap)

    def as_dict(self) -> Dict[Exponent, object]:
        return dict(self.terms)

    def _combine(self, other: "Poly", sign) -> "Poly":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + sign * c
        return Poly.from_dict(d, self.nvars, self.cap)

    def __add__(self, other: "Poly") -> "Poly":
        return self._combine(other, 1)

    def __sub__(self, other: "Poly") -> "Poly":
        return self._combine(other, -1)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, c) -> "Poly":
        return Poly.from_dict({e: c * v for e, v in self.terms}, self.nvars, self.cap)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(f"x{k + 1}^{p}" if p > 1 else f"x{k + 1}" for k, p in enumerate(e) if p)
            parts.append(f"{fmt(c)}*{mono}" if mono else fmt(c))
        return " + ".join(parts)


class TruncatedPolyAlgebra:
    """Q[x_1, ..., x_N] restricted to total degree <= cap; overflow raises."""

    def __init__(self, nvars: int, degree_cap: int):
        if nvars < 1 or degree_cap < 0:
            raise ValueError("need at least one variable and a nonnegative cap")
        self.nvars = nvars
        self.cap = degree_cap

    def poly(self, d: Dict[Exponent, object]) -> Poly:
        return Poly.from_dict({tuple(e): to_rational(c) for e, c in d.items()}, self.nvars, self.cap)

    def zero(self) -> Poly:
        return Poly((), self.nvars, self.cap)

    def const(self, c=1) -> Poly:
        return self.poly({(0,) * self.nvars: c})

    def var(self, k: int) -> Poly:
        """x_k, 1-based."""
        return self.poly({tuple(1 if q == k - 1 else 0 for q in range(self.nvars)): 1})

    def mul(self, f: Poly, g: Poly) -> Poly:
        d: Dict[Exponent, object] = {}
        for e1, c1 in f.terms:
            for e2, c2 in g.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return Poly.from_dict(d, self.nvars, self.cap)

    def partial(self, k: int, f: Poly) -> Poly:
        """d/dx_k, 1-based."""
        d: Dict[Exponent, object] = {}
        for e, c in f.terms:
            if e[k - 1]:
                e2 = list(e)
                e2[k - 1] -= 1
                d[tuple(e2)] = c * e[k - 1]
        return Poly.from_dict(d, self.nvars, self.cap)

    def euler(self, f: Poly, upto: int) -> Poly:
        """Degree operator in x_1..x_upto."""
        return Poly.from_dict({e: c * sum(e[:upto]) for e, c in f.terms}, self.nvars, self.cap)


@dataclass(frozen=True)
class PoissonOracle:
    bracket: Callable
    product: Callable
    d1: Callable
    d2: Callable
    c: object
    name: str = "oracle"


def twist(oracle: PoissonOracle, u, v):
    """[u, v] + (d1 + c)(u) d2(v) - d2(u) (d1 + c)(v)."""
    o = oracle
    d1u = o.d1(u) + u.scale(o.c)
    d1v = o.d1(v) + v.scale(o.c)
    return o.bracket(u, v) + o.product(d1u, o.d2(v)) - o.product(o.d2(u), d1v)


def twist_jacobi_residual(oracle: PoissonOracle, u, v, w):
    def t(a, b):
        return twist(oracle, a, b)

    return t(u, t(v, w)) + t(v, t(w, u)) + t(w, t(u, v))


# -- oracle verification -------------------------------------------------------

_IDENTITIES: Tuple[Tuple[str, Callable], ...] = (
    ("product-commutative", lambda o, u, v, w: o.product(u, v) - o.product(v, u)),
    ("product-associative", lambda o, u, v, w: o.product(o.product(u, v), w) - o.product(u, o.product(v, w))),
    ("bracket-antisymmetric", lambda o, u, v, w: o.bracket(u, v) + o.bracket(v, u)),
    (
        "bracket-jacobi",
        lambda o, u, v, w: o.bracket(u, o.bracket(v, w)) + o.bracket(v, o.bracket(w, u)) + o.bracket(w, o.bracket(u, v)),
    ),
    (
        "compatibility",
        lambda o, u, v, w: o.bracket(u, o.product(v, w)) - o.product(o.bracket(u, v), w) - o.product(v, o.bracket(u, w)),
    ),
    ("d2-product-leibniz", lambda o, u, v, w: o.d2(o.product(u, v)) - o.product(o.d2(u), v) - o.product(u, o.d2(v))),
    ("d1-product-leibniz", lambda o, u, v, w: o.d1(o.product(u, v)) - o.product(o.d1(u), v) - o.product(u, o.d1(v))),
    ("d2-bracket-derivation", lambda o, u, v, w: o.d2(o.bracket(u, v)) - o.bracket(o.d2(u), v) - o.bracket(u, o.d2(v))),
    (
        "d1-quasi-derivation",
        lambda o, u, v, w: o.d1(o.bracket(u, v)) - o.bracket(o.d1(u), v) - o.bracket(u, o.d1(v))
        - o.bracket(u, v).scale(o.c),
    ),
    ("d1-d2-commute", lambda o, u, v, w: o.d1(o.d2(u)) - o.d2(o.d1(u))),
)

IDENTITY_NAMES = tuple(name for name, _ in _IDENTITIES)


def verify_oracle(oracle: PoissonOracle, samples: Iterable[Sequence]) -> ValidationReport:
    """Check every oracle identity on every sample triple; records the first witness per identity."""
    samples = [tuple(s) + (s[-1],) * (3 - len(s)) for s in samples]
    checks: List[CheckResult] = []
    for name, residual in _IDENTITIES:
        witness = None
        for u, v, w in samples:
            r = residual(oracle, u, v, w)
            if r:
                witness = {"u": str(u), "v": str(v), "w": str(w), "residual": str(r)}
                break
        detail = "holds on all samples" if witness is None else "violated"
        checks.append(CheckResult(name, witness is None, detail, witness))
    return ValidationReport(tuple(checks))


# -- specializations -----------------------------------------------------------


def contact_oracle(n: int, degree_cap: int) -> Tuple[PoissonOracle, TruncatedPolyAlgebra]:
    """Q[x_1..x_{2n+1}], canonical bracket on the first 2n variables, d1 = Euler in them,
    d2 = d/dx_{2n+1}, c = -2."""
    P = TruncatedPolyAlgebra(2 * n + 1, degree_cap)

    def bracket(f, g):
        out = P.zero()
        for i in range(1, n + 1):
            out = out + P.mul(P.partial(i, f), P.partial(n + i, g)) - P.mul(P.partial(n + i, f), P.partial(i, g))
        return out

    oracle = PoissonOracle(
        bracket=bracket,
        product=P.mul,
        d1=lambda f: P.euler(f, 2 * n),
        d2=lambda f: P.partial(2 * n + 1, f),
        c=-2,
        name=f"contact(n={n})",
    )
    return oracle, P


def contact_bracket(P: TruncatedPolyAlgebra, f: Poly, g: Poly) -> Poly:
    """Contact bracket straight from monomial exponents (no oracle, no twist).

    For x^a, x^b with t the last variable and |a|' the degree in the first 2n:
    ((|a|' - 2) b_t - a_t (|b|' - 2)) x^{a+b-e_t}
      + sum_i (a_i b_{n+i} - a_{n+i} b_i) x^{a+b-e_i-e_{n+i}}.
    """
    N = P.nvars
    n = (N - 1) // 2
    t = N - 1
    d: Dict[Exponent, object] = {}

    def put(e, c):
        if c:
            d[e] = d.get(e, 0) + c

    for a, ca in f.terms:
        da = sum(a[:t])
        for b, cb in g.terms:
            db = sum(b[:t])
            s = [x + y for x, y in zip(a, b)]
            cc = ca * cb
            if s[t] > 0:
                e = list(s)
                e[t] -= 1
                put(tuple(e), cc * ((da - 2) * b[t] - a[t] * (db - 2)))
            for i in range(n):
                coef = a[i] * b[n + i] - a[n + i] * b[i]
                if coef:
                    e = list(s)
                    e[i] -= 1
                    e[n + i] -= 1
                    put(tuple(e), cc * coef)
    return Poly.from_dict(d, N, P.cap)


def block_oracle(alg: HamiltonianAlgebra) -> PoissonOracle:
    """Zero bracket, c = 1, product and d1, d2 of the Hamiltonian algebra."""
    return PoissonOracle(
        bracket=lambda u, v: AlgebraElement(),
        product=alg.multiply,
        d1=lambda u: alg.derive(1, u),
        d2=lambda u: alg.derive(2, u),
        c=1,
        name="block",
    )


def block_bracket(alg: HamiltonianAlgebra, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """(d1 + 1)(u) d2(v) - d2(u) (d1 + 1)(v) expanded on monomials."""
    acc: Dict = {}
    for (al, i), c in u.terms.items():
        A = alg.char_values(al)
        for (be, j), e in v.terms.items():
            B = alg.char_values(be)
            g = tuple(x + y for x, y in zip(al, be))
            k = tuple(x + y for x, y in zip(i, j))
            ce = c * e
            for idx, coef in (
                (k, (A[0] + 1) * B[1] - A[1] * (B[0] + 1)),
                (lower(k, 0), i[0] * B[1] - j[0] * A[1]),
                (lower(k, 1), j[1] * (A[0] + 1) - i[1] * (B[0] + 1)),
                (lower(k, 0, 1), i[0] * j[1] - i[1] * j[0]),
            ):
                if idx is not None and coef:
                    acc[(g, idx)] = acc.get((g, idx), 0) + ce * coef
    return AlgebraElement.from_dict_accumulate(acc)


def hamiltonian_oracle(alg: HamiltonianAlgebra) -> PoissonOracle:
    """The Poisson part of the main bracket with d1, d2 and c = 1; its twist is ``alg.bracket``."""
    return PoissonOracle(
        bracket=alg.poisson_part,
        product=alg.multiply,
        d1=lambda u: alg.derive(1, u),
        d2=lambda u: alg.derive(2, u),
        c=1,
        name="hamiltonian",
    )
