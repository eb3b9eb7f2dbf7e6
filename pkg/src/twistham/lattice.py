"""Grading-group data: the skew form, characters, semigroup mask, signatures.

The grading group is Z^m.  Every hypothesis on the defining data is decided
by exact kernel computations; failures come back as report entries carrying
a concrete witness, never as exceptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from operator import add
from typing import List, Optional, Sequence, Tuple

from .exact import (
    clear_denominators,
    dot,
    fmt,
    integer_kernel,
    integer_solve,
    normalize,
    rational_kernel,
    rational_solve,
    to_rational,
)

GroupVector = Tuple[int, ...]


class ConfigurationError(ValueError):
    """Malformed defining data (shape, antisymmetry, dimension mismatch)."""


def zero_vector(m: int) -> GroupVector:
    return (0,) * m


def unit_vector(m: int, k: int) -> GroupVector:
    return tuple(1 if i == k else 0 for i in range(m))


def vadd(a: GroupVector, b: GroupVector) -> GroupVector:
    return tuple(map(add, a, b))


def vsub(a: GroupVector, b: GroupVector) -> GroupVector:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: GroupVector) -> GroupVector:
    return tuple(-x for x in a)


def vscale(k: int, a: GroupVector) -> GroupVector:
    return tuple(k * x for x in a)


def as_group_vector(coords, m: Optional[int] = None) -> GroupVector:
    vec = []
    for c in coords:
        try:
            x = to_rational(c)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"group vector must have integer coordinates: {coords!r}") from exc
        if not isinstance(x, int):
            raise ConfigurationError(f"group vector must have integer coordinates: {coords!r}")
        vec.append(x)
    if m is not None and len(vec) != m:
        raise ConfigurationError(f"group vector {tuple(vec)} has length {len(vec)}, expected {m}")
    return tuple(vec)


@dataclass(frozen=True)
class SkewForm:
    """An antisymmetric rational matrix; ``phi(a, b) = a^T M b``."""

    matrix: Tuple[Tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.matrix)
        m = len(rows)
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ConfigurationError(f"phi row {i + 1} has length {len(row)}, expected {m}")
        for i in range(m):
            for j in range(i, m):
                if rows[i][j] != -rows[j][i]:
                    raise ConfigurationError(
                        f"phi is not antisymmetric at entry ({i + 1},{j + 1}): "
                        f"{fmt(rows[i][j])} vs ({j + 1},{i + 1}) = {fmt(rows[j][i])}"
                    )
        object.__setattr__(self, "matrix", rows)

    @property
    def m(self) -> int:
        return len(self.matrix)

    @classmethod
    def zero(cls, m: int) -> "SkewForm":
        return cls(tuple((0,) * m for _ in range(m)))

    @classmethod
    def standard_pair(cls, m: int, i: int = 0, j: int = 1) -> "SkewForm":
        """The form with phi(e_i, e_j) = 1 = -phi(e_j, e_i) and zero elsewhere."""
        rows = [[0] * m for _ in range(m)]
        rows[i][j], rows[j][i] = 1, -1
        return cls(tuple(map(tuple, rows)))

    def row(self, a: GroupVector) -> Tuple:
        """The linear functional phi(a, .) as a weight vector."""
        m = self.m
        return tuple(normalize(sum((a[i] * self.matrix[i][j] for i in range(m) if a[i]), 0)) for j in range(m))

    def __call__(self, a: GroupVector, b: GroupVector):
        return eval_form(self, a, b)


def eval_form(phi: SkewForm, a: GroupVector, b: GroupVector):
    if len(a) != phi.m or len(b) != phi.m:
        raise ConfigurationError(f"vectors of length {len(a)}, {len(b)} for a form on Z^{phi.m}")
    return dot(phi.row(a), b)


@dataclass(frozen=True)
class Character:
    """An additive map Z^m -> Q given by its values on the standard basis."""

    weights: Tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(to_rational(w) for w in self.weights))

    @property
    def m(self) -> int:
        return len(self.weights)

    def is_zero(self) -> bool:
        return all(w == 0 for w in self.weights)

    def __call__(self, a: GroupVector):
        if len(a) != self.m:
            raise ConfigurationError(f"vector of length {len(a)} for a character on Z^{self.m}")
        return dot(self.weights, a)

    @classmethod
    def zero(cls, m: int) -> "Character":
        return cls((0,) * m)


class Slot(str, Enum):
    POINT = "POINT"  # J_p = {0}
    NAT = "NAT"  # J_p = N


@dataclass(frozen=True)
class SemigroupMask:
    flags: Tuple[Slot, ...]

    def __post_init__(self):
        try:
            flags = tuple(f if isinstance(f, Slot) else Slot(str(f).upper()) for f in self.flags)
        except ValueError as exc:
            raise ConfigurationError(f"mask entries must be POINT or NAT: {self.flags!r}") from exc
        object.__setattr__(self, "flags", flags)

    def __len__(self):
        return len(self.flags)

    def is_nat(self, p: int) -> bool:
        return self.flags[p] is Slot.NAT

    @property
    def nat_slots(self) -> Tuple[int, ...]:
        return tuple(p for p, f in enumerate(self.flags) if f is Slot.NAT)

    @property
    def trivial(self) -> bool:
        """True when every factor is {0}, i.e. the index semigroup is {0}."""
        return not self.nat_slots

    @classmethod
    def of(cls, spec: str) -> "SemigroupMask":
        """``SemigroupMask.of("NNPN")`` -- N for NAT, P for POINT."""
        bad = [ch for ch in spec if ch.upper() not in "NP"]
        if bad:
            raise ConfigurationError(f"mask {spec!r}: use N (NAT) or P (POINT), got {bad[0]!r}")
        return cls(tuple(Slot.NAT if ch.upper() == "N" else Slot.POINT for ch in spec))


@dataclass(frozen=True)
class AlgebraSignature:
    """All defining data.  Slots are 0-based here: ``chars[0]`` is the first character.

    ``sigmas[s - 1]`` is the common value of the paired elements for the slot
    pair (2s+1, 2s+2) in 1-based numbering, s = 1..n-1.
    """

    n: int
    m: int
    phi: SkewForm
    chars: Tuple[Character, ...]
    mask: SemigroupMask
    sigmas: Tuple[GroupVector, ...]
    epsilon: GroupVector

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ConfigurationError("n and m must be positive")
        if self.phi.m != self.m:
            raise ConfigurationError(f"phi is {self.phi.m}x{self.phi.m}, expected {self.m}x{self.m}")
        if len(self.chars) != 2 * self.n:
            raise ConfigurationError(f"expected {2 * self.n} characters, got {len(self.chars)}")
        for p, ch in enumerate(self.chars):
            if ch.m != self.m:
                raise ConfigurationError(f"character {p + 1} has {ch.m} weights, expected {self.m}")
        if len(self.mask) != 2 * self.n:
            raise ConfigurationError(f"mask has {len(self.mask)} entries, expected {2 * self.n}")
        if len(self.sigmas) != self.n - 1:
            raise ConfigurationError(f"expected {self.n - 1} sigma vectors, got {len(self.sigmas)}")
        object.__setattr__(self, "sigmas", tuple(as_group_vector(s, self.m) for s in self.sigmas))
        object.__setattr__(self, "epsilon", as_group_vector(self.epsilon, self.m))

    @property
    def sigma_total(self) -> GroupVector:
        """sum of the paired sigma elements minus 2*epsilon."""
        acc = vscale(-2, self.epsilon)
        for s in self.sigmas:
            acc = vadd(acc, s)
        return acc

    def char_values(self, a: GroupVector) -> Tuple:
        return tuple(ch(a) for ch in self.chars)


@dataclass(frozen=True)
class ModuleSignature:
    xi: Tuple
    f: Character

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(to_rational(x) for x in self.xi))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[Tuple] = None

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "witness": _render_witness(self.witness),
        }


def _render_witness(w):
    if w is None:
        return None
    if isinstance(w, dict):
        return {str(k): str(v) for k, v in w.items()}
    return [fmt(x) for x in w]


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names_failed(self) -> List[str]:
        return [c.name for c in self.failures()]


def _stack(phi: SkewForm, chars: Sequence[Character]) -> List[List]:
    """Rows whose joint kernel is Rad_phi ∩ (∩ ker of the given characters)."""
    return [list(r) for r in phi.matrix] + [list(ch.weights) for ch in chars]


def radical_basis(phi: SkewForm) -> List[GroupVector]:
    """Z-basis of {a in Z^m : phi(a, .) = 0}."""
    return [tuple(v) for v in integer_kernel(phi.matrix, phi.m)]


def subspace_basis(phi: SkewForm, chars: Sequence[Character]) -> List[GroupVector]:
    """Integer spanning vectors of Rad_phi ∩ (∩ ker chars) over Q."""
    return [tuple(clear_denominators(v)) for v in rational_kernel(_stack(phi, chars), phi.m)]


def validate_signature(sig: AlgebraSignature) -> ValidationReport:
    n2 = 2 * sig.n
    phi, chars = sig.phi, sig.chars
    checks: List[CheckResult] = []

    for p in range(n2):
        ok = not chars[p].is_zero() or sig.mask.is_nat(p)
        checks.append(
            CheckResult(
                f"nondegenerate-slot[{p + 1}]",
                ok,
                "" if ok else f"character {p + 1} vanishes and J_{p + 1} = {{0}}",
            )
        )

    joint = subspace_basis(phi, chars)
    checks.append(
        CheckResult(
            "joint-kernel-trivial",
            not joint,
            "" if not joint else "Rad_phi meets every character kernel nontrivially",
            joint[0] if joint else None,
        )
    )

    for q in range(n2):
        if chars[q].is_zero():
            continue
        others = [chars[p] for p in range(n2) if p != q]
        space = subspace_basis(phi, others)
        wit = next((v for v in space if chars[q](v) != 0), None)
        checks.append(
            CheckResult(
                f"witness[{q + 1}]",
                wit is not None,
                (
                    ""
                    if wit is not None
                    else f"character {q + 1} vanishes on Rad_phi ∩ other kernels "
                    f"(spanned by {space if space else 'nothing'})"
                ),
                wit,
            )
        )

    for s, sigma in enumerate(sig.sigmas, start=1):
        a, b = 2 * s, 2 * s + 1  # 0-based slots of the pair (2s+1, 2s+2)
        name = f"sigma[{2 * s + 1}]"
        bad_phi = next((k for k in range(sig.m) if eval_form(phi, sigma, unit_vector(sig.m, k)) != 0), None)
        bad_char = next((p for p in range(n2) if p not in (a, b) and chars[p](sigma) != 0), None)
        active = not chars[a].is_zero() or not chars[b].is_zero()
        if bad_phi is not None:
            checks.append(CheckResult(name, False, f"sigma not in Rad_phi (pairs nontrivially with e_{bad_phi + 1})", sigma))
        elif bad_char is not None:
            checks.append(CheckResult(name, False, f"character {bad_char + 1} does not vanish on sigma", sigma))
        elif active and not any(sigma):
            checks.append(CheckResult(name, False, "sigma must be nonzero when either paired character is nonzero", sigma))
        elif not active and any(sigma):
            checks.append(CheckResult(name, False, "sigma must be zero when both paired characters vanish", sigma))
        else:
            checks.append(CheckResult(name, True))

    eps = sig.epsilon
    v1 = chars[0](eps)
    checks.append(CheckResult("epsilon-unit", v1 == 1, "" if v1 == 1 else f"phi_1(epsilon) = {fmt(v1)}", eps if v1 != 1 else None))
    bad_phi = next((k for k in range(sig.m) if eval_form(phi, eps, unit_vector(sig.m, k)) != 0), None)
    checks.append(
        CheckResult(
            "epsilon-radical",
            bad_phi is None,
            "" if bad_phi is None else f"epsilon pairs nontrivially with e_{bad_phi + 1}",
            None if bad_phi is None else eps,
        )
    )
    bad_char = next((p for p in range(1, n2) if chars[p](eps) != 0), None)
    checks.append(
        CheckResult(
            "epsilon-kernel",
            bad_char is None,
            "" if bad_char is None else f"character {bad_char + 1} does not vanish on epsilon",
            None if bad_char is None else eps,
        )
    )
    return ValidationReport(tuple(checks))


def validate_module_signature(sig: AlgebraSignature, msig: ModuleSignature) -> ValidationReport:
    checks = []
    if len(msig.xi) != 2 * sig.n:
        raise ConfigurationError(f"xi has {len(msig.xi)} entries, expected {2 * sig.n}")
    if msig.f.m != sig.m:
        raise ConfigurationError(f"f has {msig.f.m} weights, expected {sig.m}")
    bad = next((v for v in radical_basis(sig.phi) if msig.f(v) != 0), None)
    checks.append(
        CheckResult(
            "f-kills-radical",
            bad is None,
            "" if bad is None else f"f({bad}) = {fmt(msig.f(bad))}",
            bad,
        )
    )
    return ValidationReport(tuple(checks))


@dataclass(frozen=True)
class MuSolution:
    mu: Optional[GroupVector]
    status: str  # "integral" | "no-rational-solution" | "non-integral"
    rational: Optional[Tuple] = None

    @property
    def exists(self) -> bool:
        return self.mu is not None


def _mu_system(sig: AlgebraSignature, msig: ModuleSignature):
    rows = [list(ch.weights) for ch in sig.chars]
    rhs = list(msig.xi)
    for k in range(sig.m):
        # phi(e_k, mu) = row k of the matrix dotted with mu
        rows.append(list(sig.phi.matrix[k]))
        rhs.append(msig.f.weights[k])
    return rows, rhs


def solve_mu(sig: AlgebraSignature, msig: ModuleSignature) -> MuSolution:
    """Find mu in Z^m with chars[p](mu) = xi_p and phi(a, mu) = f(a) for all a."""
    rows, rhs = _mu_system(sig, msig)
    rat = rational_solve(rows, rhs, sig.m)
    if rat is None:
        return MuSolution(None, "no-rational-solution")
    if all(Fraction(x).denominator == 1 for x in rat):
        return MuSolution(tuple(int(x) for x in rat), "integral", tuple(rat))
    z = integer_solve(rows, rhs, sig.m)
    if z is None:
        return MuSolution(None, "non-integral", tuple(rat))
    return MuSolution(tuple(z), "integral", tuple(rat))
