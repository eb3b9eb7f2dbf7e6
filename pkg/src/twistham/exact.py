"""Exact dense linear algebra over Q and Z.

Matrices are lists of rows; entries are ``int`` or ``Fraction``.  Nothing in
here ever touches a float.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

Number = "int | Fraction"


def to_rational(value) -> Fraction | int:
    """Parse ``value`` as an exact rational.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-2/7"`` or
    ``"0.125"``.  Floats are refused because their decimal text is not what
    the user wrote.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return normalize(value)
    if isinstance(value, str):
        try:
            return normalize(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"not an exact rational: {value!r} ({type(value).__name__})")


def normalize(x):
    """Collapse integral Fractions to ``int`` (keeps the fast int path hot)."""
    if type(x) is Fraction and x._denominator == 1:
        return x._numerator
    return x


def fmt(x) -> str:
    x = normalize(x)
    return str(x)


def dot(u: Sequence, v: Sequence):
    return normalize(sum((a * b for a, b in zip(u, v)), 0))


def rref(matrix: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form with positional pivoting.

    Returns ``(rows, pivots)`` where only the nonzero rows are kept.
    """
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = [[normalize(x) for x in row] for row in rows[:r]]
    return out, pivots


def rational_kernel(matrix: Sequence[Sequence], ncols: int) -> List[List]:
    """Basis of ``{x in Q^ncols : matrix @ x = 0}`` (one vector per free column)."""
    if not matrix:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = normalize(-row[fc])
        basis.append(v)
    return basis


def clear_denominators(vec: Sequence) -> List[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in vec:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def integer_rows(matrix: Sequence[Sequence], rhs: Optional[Sequence] = None):
    """Scale each row (and matching rhs entry) by the lcm of its denominators."""
    out_m, out_b = [], []
    for k, row in enumerate(matrix):
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        if rhs is not None:
            den = lcm(den, Fraction(rhs[k]).denominator)
        out_m.append([int(Fraction(x) * den) for x in row])
        if rhs is not None:
            out_b.append(int(Fraction(rhs[k]) * den))
    return (out_m, out_b) if rhs is not None else out_m


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hermite(matrix: Sequence[Sequence[int]], ncols: int):
    """Column-style Hermite reduction ``A @ U = H`` with ``U`` unimodular.

    Returns ``(H, U, pivot_rows)``.  The first ``len(pivot_rows)`` columns of
    ``H`` are in echelon form (column ``j`` has its leading nonzero in row
    ``pivot_rows[j]``, positive); the remaining columns are zero, so the
    matching columns of ``U`` are a Z-basis of the integer kernel of ``A``.
    """
    H = [list(map(int, r)) for r in matrix]
    nrows = len(H)
    U = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for M in (H, U):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    pivot_rows: List[int] = []
    k = 0
    for i in range(nrows):
        if k == ncols:
            break
        for j in range(k + 1, ncols):
            if H[i][j] == 0:
                continue
            x, y = H[i][k], H[i][j]
            g, s, t = _xgcd(x, y)
            # det [[s, -y/g], [t, x/g]] = (s*x + t*y)/g = 1
            colop(k, j, s, t, -y // g, x // g)
        if H[i][k] == 0:
            continue
        if H[i][k] < 0:
            for M in (H, U):
                for row in M:
                    row[k] = -row[k]
        for j in range(k):
            q = H[i][j] // H[i][k]
            if q:
                for M in (H, U):
                    for row in M:
                        row[j] -= q * row[k]
        pivot_rows.append(i)
        k += 1
    return H, U, pivot_rows


def integer_kernel(matrix: Sequence[Sequence], ncols: int) -> List[List[int]]:
    """Z-basis of the saturated lattice ``ker(matrix) ∩ Z^ncols``."""
    if not matrix:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    A = integer_rows(matrix)
    _, U, piv = column_hermite(A, ncols)
    r = len(piv)
    return [[U[i][j] for i in range(ncols)] for j in range(r, ncols)]


def rational_solve(matrix: Sequence[Sequence], rhs: Sequence, ncols: int):
    """One solution of ``matrix @ x = rhs`` over Q with free variables at 0, or None."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return x


def integer_solve(matrix: Sequence[Sequence], rhs: Sequence, ncols: int):
    """One solution of ``matrix @ x = rhs`` with ``x`` in Z^ncols, or None.

    Rows may be rational; they are scaled to integers first.  Uses the column
    Hermite form: solve ``H y = b`` by forward substitution, then ``x = U y``.
    """
    A, b = integer_rows(matrix, rhs)
    H, U, piv = column_hermite(A, ncols)
    y = [0] * ncols
    for j, pr in enumerate(piv):
        acc = b[pr] - sum(H[pr][l] * y[l] for l in range(j))
        q, rem = divmod(acc, H[pr][j])
        if rem:
            return None
        y[j] = q
    for i, row in enumerate(H):
        if sum(row[l] * y[l] for l in range(len(piv))) != b[i]:
            return None
    return [sum(U[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
