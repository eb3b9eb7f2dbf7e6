"""Sparse rational combinations of basis monomials x^{alpha,i}.

A basis index is the pair ``(alpha, i)`` of integer tuples; tuple comparison
gives the canonical lexicographic term order for free.  Text form::

    2 * x[0,0,0,0,0|0,0,0,0] + -1/3 * x[1,0,-1,0,0|0,1,0,0]
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .exact import fmt, normalize, to_rational

BasisIndex = Tuple[Tuple[int, ...], Tuple[int, ...]]


class ElementSyntaxError(ValueError):
    pass


class AlgebraElement:
    """Immutable sparse vector: ``terms`` maps BasisIndex -> nonzero rational."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BasisIndex, object] | None = None, *, _trusted: bool = False):
        if _trusted:
            self.terms: Dict[BasisIndex, object] = terms  # type: ignore[assignment]
        else:
            self.terms = {k: normalize(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def monomial(cls, alpha, index, coef=1) -> "AlgebraElement":
        c = to_rational(coef)
        return cls({(tuple(alpha), tuple(index)): c}) if c else cls()

    @classmethod
    def from_dict_accumulate(cls, acc: Dict[BasisIndex, object]) -> "AlgebraElement":
        """Wrap an accumulator dict, dropping cancelled terms (takes ownership)."""
        return cls({k: normalize(v) for k, v in acc.items() if v != 0}, _trusted=True)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[BasisIndex, object]]:
        for k in sorted(self.terms):
            yield k, self.terms[k]

    def coefficient(self, key: BasisIndex):
        return self.terms.get(key, 0)

    def support(self):
        return sorted(self.terms)

    def groups(self) -> Dict[Tuple[int, ...], "AlgebraElement"]:
        """Split into graded components, keyed by group part."""
        out: Dict[Tuple[int, ...], Dict] = {}
        for (a, i), c in self.terms.items():
            out.setdefault(a, {})[(a, i)] = c
        return {a: AlgebraElement(t, _trusted=True) for a, t in out.items()}

    def degree(self) -> int:
        """Largest |i| over the support (0 for the zero element)."""
        return max((sum(i) for _, i in self.terms), default=0)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return AlgebraElement.from_dict_accumulate(acc)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({k: -v for k, v in self.terms.items()}, _trusted=True)

    def scale(self, c) -> "AlgebraElement":
        c = to_rational(c)
        if c == 0:
            return AlgebraElement()
        return AlgebraElement({k: normalize(c * v) for k, v in self.terms.items()}, _trusted=True)

    def __mul__(self, c) -> "AlgebraElement":
        if isinstance(c, AlgebraElement):
            raise TypeError("use HamiltonianAlgebra.multiply for the algebra product")
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({render(self)!r})"


def zero() -> AlgebraElement:
    return AlgebraElement()


def linear_combination(pairs: Iterable[Tuple[object, AlgebraElement]]) -> AlgebraElement:
    acc: Dict[BasisIndex, object] = {}
    for c, u in pairs:
        if c == 0:
            continue
        for k, v in u.terms.items():
            acc[k] = acc.get(k, 0) + c * v
    return AlgebraElement.from_dict_accumulate(acc)


def render_key(key: BasisIndex) -> str:
    a, i = key
    return "x[" + ",".join(map(str, a)) + "|" + ",".join(map(str, i)) + "]"


def render(u: AlgebraElement) -> str:
    if not u.terms:
        return "0"
    return " + ".join(f"{fmt(c)} * {render_key(k)}" for k, c in u)


_TERM = re.compile(
    r"\s*(?P<coef>[+-]?\s*[0-9]+(?:\.[0-9]+)?(?:/[0-9]+)?)\s*\*\s*"
    r"x\[(?P<alpha>[^|\]]*)\|(?P<index>[^\]]*)\]\s*"
)


def parse_element(text: str, m: int | None = None, width: int | None = None) -> AlgebraElement:
    """Inverse of :func:`render`; ``m`` and ``width`` check the tuple lengths."""
    s = text.strip()
    if s == "0":
        return AlgebraElement()
    acc: Dict[BasisIndex, object] = {}
    pos = 0
    first = True
    while pos < len(s):
        if not first:
            if s[pos] != "+":
                raise ElementSyntaxError(f"expected '+' at column {pos + 1} in {text!r}")
            pos += 1
        mt = _TERM.match(s, pos)
        if mt is None:
            raise ElementSyntaxError(f"cannot parse term at column {pos + 1} in {text!r}")
        coef = to_rational(mt.group("coef").replace(" ", ""))
        try:
            alpha = tuple(int(x) for x in mt.group("alpha").split(","))
            index = tuple(int(x) for x in mt.group("index").split(","))
        except ValueError as exc:
            raise ElementSyntaxError(f"bad integer in term at column {pos + 1} in {text!r}") from exc
        if m is not None and len(alpha) != m:
            raise ElementSyntaxError(f"group part {alpha} has length {len(alpha)}, expected {m}")
        if width is not None and len(index) != width:
            raise ElementSyntaxError(f"multi-index {index} has length {len(index)}, expected {width}")
        if any(x < 0 for x in index):
            raise ElementSyntaxError(f"negative multi-index entry in {index}")
        key = (alpha, index)
        acc[key] = acc.get(key, 0) + coef
        pos = mt.end()
        first = False
    return AlgebraElement.from_dict_accumulate(acc)

