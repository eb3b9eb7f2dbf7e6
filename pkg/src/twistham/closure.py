"""Exact span bookkeeping and window-bounded closure probes.

The grading group is infinite, so every closure here lives inside a finite
*ambient* window.  A bracket (or action) result that leaves the ambient is
dropped as a whole, never clipped term by term, so the computed span is
always a genuine subspace of the ideal (submodule) being probed.  Pass
``strict=True`` to turn any escape into :class:`AmbientOverflow` instead.

A report that did not stabilize is inconclusive and says nothing about the
infinite algebra.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import HamiltonianAlgebra, QuotientElement
from .elements import AlgebraElement, BasisIndex, linear_combination, render_key
from .exact import fmt, normalize, rational_kernel, rational_solve
from .lattice import GroupVector, vadd, zero_vector
from .module import ActionContext, ModuleVector

DEFAULT_MAX_ITER = 32


class AmbientOverflow(RuntimeError):
    """A vector left the ambient window; ``hint`` is a suggested enlargement."""

    def __init__(self, message: str, hint: Optional["Window"] = None):
        super().__init__(message)
        self.hint = hint


class UnsupportedOperator(ValueError):
    pass


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return normalize(Fraction(a) / b)


# -- windows ------------------------------------------------------------------


def multi_indices(nat: Sequence[bool], cap: int) -> List[Tuple[int, ...]]:
    """All multi-indices allowed by the mask with |i| <= cap, canonically ordered."""
    slots = [p for p, flag in enumerate(nat) if flag]
    out = []
    for combo in itertools.product(range(cap + 1), repeat=len(slots)):
        if sum(combo) <= cap:
            idx = [0] * len(nat)
            for p, e in zip(slots, combo):
                idx[p] = e
            out.append(tuple(idx))
    return sorted(out)


@dataclass(frozen=True)
class Window:
    group_box: Tuple[Tuple[int, int], ...]
    degree_cap: int

    def __post_init__(self):
        box = tuple((int(lo), int(hi)) for lo, hi in self.group_box)
        if any(lo > hi for lo, hi in box):
            raise ValueError(f"empty group box {box}")
        if self.degree_cap < 0:
            raise ValueError("degree cap must be nonnegative")
        object.__setattr__(self, "group_box", box)

    @classmethod
    def cube(cls, m: int, radius: int, degree_cap: int = 0) -> "Window":
        return cls(tuple((-radius, radius) for _ in range(m)), degree_cap)

    def group_points(self) -> List[GroupVector]:
        return list(itertools.product(*(range(lo, hi + 1) for lo, hi in self.group_box)))

    def contains_group(self, a: GroupVector) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(a, self.group_box))

    def contains(self, key: BasisIndex) -> bool:
        a, i = key
        return sum(i) <= self.degree_cap and all(lo <= x <= hi for x, (lo, hi) in zip(a, self.group_box))

    def contains_element(self, u: AlgebraElement) -> bool:
        return all(self.contains(k) for k in u.terms)

    def basis(self, nat: Sequence[bool]) -> List[BasisIndex]:
        idx = multi_indices(nat, self.degree_cap)
        return [(a, i) for a in self.group_points() for i in idx]

    def size(self, nat: Sequence[bool]) -> int:
        k = sum(1 for f in nat if f)
        n_idx = comb(self.degree_cap + k, k)
        return prod(hi - lo + 1 for lo, hi in self.group_box) * n_idx

    def enlarged(self, radius: int, extra_degree: int) -> "Window":
        return Window(tuple((lo - radius, hi + radius) for lo, hi in self.group_box), self.degree_cap + extra_degree)

    def covers(self, other: "Window") -> bool:
        return other.degree_cap <= self.degree_cap and all(
            lo <= lo2 and hi2 <= hi for (lo, hi), (lo2, hi2) in zip(self.group_box, other.group_box)
        )


def enlarged_ambient(alg: HamiltonianAlgebra, probe: Window) -> Window:
    """Probe box grown by max|coord| of eps and the sigmas times (cap+1), degree cap + 2.

    Large: for DESK-1 with a unit box and cap 1 this is 336k basis vectors.
    The closures default to the probe window itself instead.
    """
    r = max((abs(x) for v in (alg.epsilon,) + alg.sig.sigmas for x in v), default=0)
    return probe.enlarged(r * (probe.degree_cap + 1), 2)


# -- spans ----------------------------------------------------------------------


class EchelonSpan:
    """Incrementally built row-echelon basis over basis-index columns.

    Each row is stored under its leading column (smallest under ``order``)
    with leading coefficient 1.  With ``track=True`` every row also records
    the combination of inserted vectors it came from, so membership can be
    certified in terms of the original inputs.
    """

    def __init__(self, order: Optional[Callable[[BasisIndex], object]] = None, track: bool = False):
        self.order = order
        self.track = track
        self.rows: Dict[BasisIndex, Dict[BasisIndex, object]] = {}
        self.combos: Dict[BasisIndex, Dict[int, object]] = {}
        self.inserted = 0
        self.last_lead: Optional[BasisIndex] = None

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _key(self, k):
        return k if self.order is None else self.order(k)

    def _reduce(self, terms: Dict, combo: Optional[Dict]):
        vec = dict(terms)
        heap = [(self._key(k), k) for k in vec]
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            _, k = heapq.heappop(heap)
            c = vec.get(k)
            if not c:
                continue
            row = rows.get(k)
            if row is None:
                continue
            for k2, e in row.items():
                if k2 in vec:
                    v = vec[k2] - c * e
                    if v:
                        vec[k2] = v
                    else:
                        del vec[k2]
                else:
                    vec[k2] = -c * e
                    heapq.heappush(heap, (self._key(k2), k2))
            if combo is not None:
                for g, e in self.combos[k].items():
                    v = combo.get(g, 0) - c * e
                    if v:
                        combo[g] = v
                    else:
                        combo.pop(g, None)
        return vec, combo

    def add(self, u: AlgebraElement, gid: Optional[int] = None) -> bool:
        """Insert ``u``; True iff it enlarged the span.

        ``gid`` names the vector in tracked combinations (default: insertion count).
        """
        if gid is None:
            gid = self.inserted
        self.inserted += 1
        vec, combo = self._reduce(u.terms, {gid: 1} if self.track else None)
        if not vec:
            return False
        lead = min(vec, key=self._key)
        c = vec[lead]
        self.last_lead = lead
        self.rows[lead] = {k: _div(v, c) for k, v in vec.items()}
        if self.track:
            self.combos[lead] = {g: _div(v, c) for g, v in combo.items()}
        return True

    def contains(self, u: AlgebraElement) -> bool:
        vec, _ = self._reduce(u.terms, None)
        return not vec

    def express(self, u: AlgebraElement) -> Optional[Dict[int, object]]:
        """Coefficients over inserted vectors (by insertion number) summing to ``u``, or None."""
        if not self.track:
            raise ValueError("span was built without tracking")
        vec, combo = self._reduce(u.terms, {})
        if vec:
            return None
        return {g: normalize(-c) for g, c in sorted(combo.items())}

    def pivots(self) -> List[BasisIndex]:
        return sorted(self.rows, key=self._key)

    def reduced(self) -> List[Tuple[BasisIndex, Dict, Optional[Dict]]]:
        """Fully reduced rows ``(lead, row, combo)``: each row vanishes on every other pivot.

        Back substitution from the largest lead down; rows are copies.
        """
        out: Dict[BasisIndex, Tuple[Dict, Optional[Dict]]] = {}
        for lead in sorted(self.rows, key=self._key, reverse=True):
            row = dict(self.rows[lead])
            combo = dict(self.combos[lead]) if self.track else None
            for p in [k for k in row if k != lead and k in out]:
                c = row.get(p)
                if not c:
                    continue
                prow, pcombo = out[p]
                for k2, e in prow.items():
                    v = row.get(k2, 0) - c * e
                    if v:
                        row[k2] = v
                    else:
                        row.pop(k2, None)
                if combo is not None:
                    for g, e in pcombo.items():
                        v = combo.get(g, 0) - c * e
                        if v:
                            combo[g] = v
                        else:
                            combo.pop(g, None)
            out[lead] = (row, combo)
        return [(lead, *out[lead]) for lead in sorted(out, key=self._key)]

    def rows_as_elements(self) -> List[AlgebraElement]:
        return [AlgebraElement(self.rows[p]) for p in self.pivots()]


@dataclass(frozen=True)
class SpanBasis:
    """Reduced row-echelon basis over an ordered ambient list of basis indices."""

    ambient: Tuple[BasisIndex, ...]
    rows: Tuple[Tuple, ...]  # dense rows over the ambient coordinates
    pivots: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _vector(self, u: AlgebraElement) -> List:
        pos = {k: n for n, k in enumerate(self.ambient)}
        vec = [0] * len(self.ambient)
        for k, c in u.terms.items():
            if k not in pos:
                raise AmbientOverflow(f"{render_key(k)} is outside the ambient basis")
            vec[pos[k]] = c
        return vec

    def coordinates(self, u: AlgebraElement) -> Optional[List]:
        """Coefficients on ``rows`` if ``u`` lies in the span, else None."""
        vec = self._vector(u)
        coords = [vec[p] for p in self.pivots]
        for c, row in zip(coords, self.rows):
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
        return coords if not any(vec) else None

    def contains(self, u: AlgebraElement) -> bool:
        return self.coordinates(u) is not None

    def elements(self) -> List[AlgebraElement]:
        return [AlgebraElement({k: c for k, c in zip(self.ambient, row) if c}) for row in self.rows]


def rref_exact(vectors: Iterable[AlgebraElement], ambient: Sequence[BasisIndex]) -> SpanBasis:
    ambient = tuple(ambient)
    pos = {k: n for n, k in enumerate(ambient)}
    span = EchelonSpan(order=pos.__getitem__)
    for u in vectors:
        for k in u.terms:
            if k not in pos:
                raise AmbientOverflow(f"{render_key(k)} is outside the ambient basis")
        span.add(u)
    # back-substitute to reduced form, last pivot first
    piv = span.pivots()
    rows = {p: dict(span.rows[p]) for p in piv}
    for t in range(len(piv) - 1, -1, -1):
        p = piv[t]
        for q in piv[:t]:
            c = rows[q].get(p)
            if c:
                for k, e in rows[p].items():
                    v = rows[q].get(k, 0) - c * e
                    if v:
                        rows[q][k] = v
                    else:
                        rows[q].pop(k, None)
    dense = tuple(tuple(normalize(rows[p].get(k, 0)) for k in ambient) for p in piv)
    return SpanBasis(ambient, dense, tuple(pos[p] for p in piv))


# -- closure probes --------------------------------------------------------------


@dataclass
class ClosureReport:
    iterations: int
    stabilized: bool
    contains_one: bool
    window_coverage: Fraction
    dimension: int
    probe_size: int
    escaped: int = 0
    missing: List[BasisIndex] = field(default_factory=list)
    certificate: Optional[List[Tuple[object, List[BasisIndex]]]] = None

    @property
    def status(self) -> str:
        if not self.stabilized:
            return "inconclusive"
        return "covered" if self.window_coverage == 1 else "proper"

    def as_record(self) -> dict:
        return {
            "iterations": self.iterations,
            "stabilized": self.stabilized,
            "contains_one": self.contains_one,
            "window_coverage": fmt(self.window_coverage),
            "dimension": self.dimension,
            "probe_size": self.probe_size,
            "escaped": self.escaped,
            "missing": [render_key(k) for k in self.missing],
            "certificate": None
            if self.certificate is None
            else [{"coefficient": fmt(c), "path": [render_key(k) for k in path]} for c, path in self.certificate],
        }


def _signature(terms: Dict) -> frozenset:
    lead = min(terms)
    c = terms[lead]
    return frozenset((k, _div(v, c)) for k, v in terms.items())


def _closure(op, gen: AlgebraElement, probe_keys: List[BasisIndex], target_keys: List[BasisIndex],
             ambient: Window, full_dim: int, max_iter: int, strict: bool, one_key: BasisIndex,
             top=None) -> ClosureReport:
    # Every independent vector is expanded (acted on by every probe) once.
    # Results leaving the ambient are dropped, so which spanning vectors get
    # expanded matters; when the queue drains, the fully reduced rows of the
    # span are expanded too, and the span counts as closed only once every
    # reduced row has been expanded.  Sparse vectors go first.  A vector's
    # depth is its bracket distance from ``gen``; depth >= max_iter is not
    # expanded and makes the run inconclusive unless the span is already full.
    span = EchelonSpan(track=True)
    # node g is either op(probe key, node h) -> ("op", h, key), a combination
    # of earlier nodes -> ("lin", {h: c}), or the generator -> None
    nodes: List[Optional[tuple]] = [None]
    raw: List[AlgebraElement] = [gen]
    depth = [0]
    span.add(gen, 0)
    queue = [(len(gen), 0, 0)]
    expanded = set()
    probe = [AlgebraElement({k: 1}, _trusted=True) for k in probe_keys]
    contains = ambient.contains
    iterations, escaped, truncated = 0, 0, False
    while span.dimension < full_dim:
        if not queue:
            for lead, row, combo in span.reduced():
                sig = _signature(row)
                if sig in expanded:
                    continue
                gid = len(raw)
                raw.append(AlgebraElement(row, _trusted=True))
                nodes.append(("lin", combo))
                depth.append(max(depth[h] for h in combo))
                expanded.add(sig)
                heapq.heappush(queue, (len(row), depth[gid], gid))
            if not queue:
                break
        _, d, g = heapq.heappop(queue)
        if d >= max_iter:
            truncated = True
            continue
        iterations = max(iterations, d + 1)
        v = raw[g]
        expanded.add(_signature(v.terms))
        # a monomial has no cancellation between its terms, so a nonzero
        # top term outside the ambient means the whole result escapes
        mono = next(iter(v.terms)) if top is not None and len(v.terms) == 1 else None
        for key, b in zip(probe_keys, probe):
            if mono is not None and not strict and not all(contains(k) for k in top(key, mono)):
                escaped += 1
                continue
            r = op(b, v)
            if not r:
                continue
            if not all(contains(k) for k in r.terms):
                if strict:
                    raise AmbientOverflow(
                        f"bracket with {render_key(key)} left the ambient window",
                        ambient.enlarged(1, 1),
                    )
                escaped += 1
                continue
            gid = len(raw)
            if span.add(r, gid):
                # keep r for the certificate, expand its reduced residual
                raw.append(r)
                nodes.append(("op", g, key))
                depth.append(d + 1)
                lead = span.last_lead
                res = span.rows[lead]
                raw.append(AlgebraElement(dict(res), _trusted=True))
                nodes.append(("lin", dict(span.combos[lead])))
                depth.append(d + 1)
                heapq.heappush(queue, (len(res), d + 1, gid + 1))
                if span.dimension >= full_dim:
                    break
    stabilized = span.dimension >= full_dim or not truncated

    covered = [k for k in target_keys if span.contains(AlgebraElement({k: 1}, _trusted=True))]
    cov_set = set(covered)
    one = AlgebraElement({one_key: 1}, _trusted=True)
    combo = span.express(one)
    cert = None
    if combo is not None:
        cert = _certificate(nodes, combo)
    n = len(target_keys)
    return ClosureReport(
        iterations=iterations,
        stabilized=stabilized,
        contains_one=combo is not None,
        window_coverage=Fraction(len(covered), n) if n else Fraction(1),
        dimension=span.dimension,
        probe_size=n,
        escaped=escaped,
        missing=[k for k in target_keys if k not in cov_set],
        certificate=cert,
    )


def _certificate(nodes, combo: Dict[int, object]) -> List[Tuple[object, List[BasisIndex]]]:
    """Expand a combination of nodes into (coefficient, bracket path) pairs, by linearity."""
    memo: Dict[int, Dict[tuple, object]] = {}

    def paths(g):
        if g in memo:
            return memo[g]
        node = nodes[g]
        if node is None:
            out = {(): 1}
        elif node[0] == "op":
            out = {(node[2],) + p: c for p, c in paths(node[1]).items()}
        else:
            out = {}
            for h, c in node[1].items():
                for p, e in paths(h).items():
                    v = out.get(p, 0) + c * e
                    if v:
                        out[p] = v
                    else:
                        out.pop(p)
        memo[g] = out
        return out

    total: Dict[tuple, object] = {}
    for g, c in combo.items():
        for p, e in paths(g).items():
            v = total.get(p, 0) + c * e
            if v:
                total[p] = v
            else:
                total.pop(p)
    return [(normalize(c), list(p)) for p, c in sorted(total.items(), key=lambda t: (len(t[0]), t[0]))]


def evaluate_certificate(op: Callable[[AlgebraElement, AlgebraElement], AlgebraElement], gen: AlgebraElement,
                         certificate: Sequence[Tuple[object, Sequence[BasisIndex]]]) -> AlgebraElement:
    """Sum of c * op(b_1, op(..., op(b_r, gen))) over the certificate entries."""
    acc = AlgebraElement()
    for c, path in certificate:
        w = gen
        for key in reversed(path):
            w = op(AlgebraElement({key: 1}, _trusted=True), w)
        acc = acc + w.scale(c)
    return acc


def _check_windows(alg, gen, probe, ambient):
    if not ambient.covers(probe):
        raise AmbientOverflow("probe window is not inside the ambient window", ambient.enlarged(0, 0))
    if not ambient.contains_element(gen):
        raise AmbientOverflow("generator is not supported in the ambient window", ambient.enlarged(1, 1))


def ideal_closure(alg: HamiltonianAlgebra, gen: QuotientElement, probe: Window, ambient: Optional[Window] = None,
                  max_iter: int = DEFAULT_MAX_ITER, strict: bool = False) -> ClosureReport:
    """Grow span{gen} by bracketing with probe monomials until nothing new fits in ``ambient``.

    Works in the quotient: x^{-eps,0} is dropped from every result and is not
    counted as a probe direction.  The certificate lists (coefficient, path)
    pairs where a path (b_1, ..., b_r) stands for [b_1, [..., [b_r, gen]]].
    """
    gen = alg.project_quotient(gen.rep)
    if not gen:
        raise ValueError("generator must be nonzero in the quotient")
    ambient = ambient or probe
    _check_windows(alg, gen.rep, probe, ambient)
    nat = alg._nat
    probe_keys = [k for k in probe.basis(nat) if k != alg.center_key]
    full = ambient.size(nat) - (1 if ambient.contains(alg.center_key) else 0)

    def op(b, v):
        return alg.project_quotient(alg.bracket(b, v)).rep

    def top(k1, k2):
        return [k for k in alg.top_terms(k1, k2) if k != alg.center_key]

    return _closure(op, gen.rep, probe_keys, probe_keys, ambient, full, max_iter, strict,
                    ((0,) * alg.m, alg.zero_index()), top)


def submodule_closure(ctx: ActionContext, gen: ModuleVector, probe: Window, ambient: Optional[Window] = None,
                      max_iter: int = DEFAULT_MAX_ITER, strict: bool = False) -> ClosureReport:
    """Same scheme with the module action in place of the bracket."""
    alg = ctx.alg
    if not gen:
        raise ValueError("generator must be nonzero")
    ambient = ambient or probe
    _check_windows(alg, gen.value, probe, ambient)
    nat = alg._nat
    # acting by x^{-eps,0} is zero, so it is left out of the probe set
    acting = [k for k in probe.basis(nat) if k != alg.center_key]
    targets = probe.basis(nat)
    full = ambient.size(nat)
    return _closure(ctx.act_element, gen.value, acting, targets, ambient, full, max_iter, strict,
                    ((0,) * alg.m, alg.zero_index()), ctx.top_terms)


@dataclass
class DerivedWindowReport:
    """Brackets of degree-0 monomials, intersected with the box span (mod x^{-eps,0})."""

    box: Window
    source: Window
    dimension: int  # dim of (span of brackets) ∩ (box span), quotient taken
    box_dimension: int  # number of box monomials other than x^{-eps,0}
    missing: List[BasisIndex]
    brackets: int
    basis: List[AlgebraElement]

    @property
    def codimension(self) -> int:
        return self.box_dimension - self.dimension


def bracket_shifts(alg: HamiltonianAlgebra) -> List[GroupVector]:
    """Group offsets (beyond a+b) that the monomial bracket can produce: 0, eps, eps+sigma_s."""
    eps = alg.sig.epsilon
    return [zero_vector(alg.sig.m), eps] + [vadd(eps, s) for s in alg.sig.sigmas]


def widen_shifted(alg: HamiltonianAlgebra, probe: Window, margin: int) -> Window:
    """``probe`` widened by ``margin`` in the coordinates some bracket shift moves."""
    shifts = bracket_shifts(alg)
    box = [list(b) for b in probe.group_box]
    for c in range(alg.sig.m):
        if any(s[c] for s in shifts):
            box[c][0] -= margin
            box[c][1] += margin
    return Window(tuple(map(tuple, box)), probe.degree_cap)


def derived_subalgebra_window(alg: HamiltonianAlgebra, probe: Window, margin: int = 1) -> DerivedWindowReport:
    """Lower bound for [H, H] ∩ span{x^{a,0} : a in box}, computed exactly.

    Brackets [x^{a,0}, x^{b,0}] preserve every coordinate on which all the
    bracket shifts vanish, so the span splits into slices indexed by those
    coordinates and each slice is reduced on its own.  Sources range over the
    box widened by ``margin`` in the remaining (shifted) coordinates; a pair is
    kept when one of its output groups lands in the box.  Inside a slice the
    columns outside the box are eliminated first, so the rows whose leading
    column lies in the box span exactly (slice span) ∩ (box span).
    """
    if not alg.sig.mask.trivial:
        raise ValueError("derived_subalgebra_window expects the all-POINT mask")
    m = alg.sig.m
    zero = alg.zero_index()
    shifts = bracket_shifts(alg)
    moving = [c for c in range(m) if any(s[c] for s in shifts)]
    fixed = [c for c in range(m) if c not in moving]
    source = widen_shifted(alg, probe, margin)
    pts = source.group_points()
    inside = probe.contains_group

    def grade(a):
        return tuple(a[c] for c in fixed)

    def order(k):
        return (inside(k[0]), k)

    spans: Dict[Tuple[int, ...], EchelonSpan] = {}
    center = alg.center_key
    count = 0
    for x, a in enumerate(pts):
        ka = (a, zero)
        for b in pts[x + 1:]:
            ab = vadd(a, b)
            if not any(inside(vadd(ab, s)) for s in shifts):
                continue
            r = alg.bracket_monomials(ka, (b, zero))
            count += 1
            if center in r.terms:
                r = alg.project_quotient(r).rep
            if r:
                g = grade(ab)
                span = spans.get(g)
                if span is None:
                    span = spans[g] = EchelonSpan(order=order)
                span.add(r)
    rows = []
    for g in sorted(spans):
        span = spans[g]
        rows.extend(AlgebraElement(span.rows[p], _trusted=True) for p in span.pivots() if inside(p[0]))
    box_keys = [(a, zero) for a in probe.group_points() if (a, zero) != center]
    missing = []
    for k in box_keys:
        span = spans.get(grade(k[0]))
        if span is None or not span.contains(AlgebraElement({k: 1}, _trusted=True)):
            missing.append(k)
    return DerivedWindowReport(probe, source, len(rows), len(box_keys), missing, count, rows)


def eigen_separate(T: Callable[[AlgebraElement], AlgebraElement], ambient: Sequence[BasisIndex],
                   subspace: SpanBasis, element: AlgebraElement) -> List[AlgebraElement]:
    """Split ``element`` into generalized eigencomponents of ``T``.

    The split is computed on the Krylov space K = span{element, T element, ...},
    which is all a single element ever sees: the companion matrix of T on K is
    small, its eigenvalues must be rational, and each generalized eigenspace
    of it maps back to one component.  When ``element`` lies in the T-stable
    ``subspace`` every component must lie there too; this is asserted.
    """
    ambient_set = set(ambient)
    if element.is_zero():
        return []

    def apply(w):
        img = T(w)
        for k in img.terms:
            if k not in ambient_set:
                raise UnsupportedOperator(f"T maps into {render_key(k)}, outside the ambient")
        return img

    span = EchelonSpan(track=True)
    krylov = [element]
    span.add(element, gid=0)
    while True:
        nxt = apply(krylov[-1])
        if not span.add(nxt, gid=len(krylov)):
            break
        krylov.append(nxt)
    d = len(krylov)
    # companion matrix of T on the Krylov basis (columns are images)
    C = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        C[j + 1][j] = 1
    for i, c in span.express(nxt).items():
        C[i][d - 1] = c
    blocks = []
    for lam, mult in _rational_eigenvalues(C):
        shifted = [[C[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
        power = shifted
        for _ in range(mult - 1):
            power = _matmul(power, shifted)
        blocks.append(rational_kernel(power, d))
    basis = [v for ker in blocks for v in ker]
    if len(basis) != d:
        raise UnsupportedOperator("T is not triangularizable over Q on the Krylov space")
    coords = rational_solve([[basis[j][i] for j in range(d)] for i in range(d)], [1] + [0] * (d - 1), d)
    out = []
    at = 0
    for ker in blocks:
        vec = [0] * d
        for v in ker:
            c = coords[at]
            at += 1
            if c:
                vec = [normalize(a + c * b) for a, b in zip(vec, v)]
        comp = linear_combination(zip(vec, krylov))
        if comp:
            out.append(comp)
    if subspace.contains(element):
        for comp in out:
            if not subspace.contains(comp):
                raise AssertionError("eigencomponent of a member left the T-stable subspace")
    return out


def _matmul(X, Y):
    return [[normalize(sum((X[i][l] * Y[l][j] for l in range(len(Y)) if X[i][l]), 0)) for j in range(len(Y[0]))]
            for i in range(len(X))]


def _rational_eigenvalues(M) -> List[Tuple[object, int]]:
    """Eigenvalues of a small square matrix with algebraic multiplicity; all must be rational."""
    import sympy

    out = []
    for lam, mult in sympy.Matrix(M).eigenvals().items():
        if not lam.is_rational:
            raise UnsupportedOperator(f"eigenvalue {lam} is not rational")
        out.append((normalize(Fraction(int(lam.p), int(lam.q))), int(mult)))
    return sorted(out)
