"""Exact linear algebra over the rationals and the integers.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator,
arbitrary precision), vectors are tuples of Fractions, matrices are tuples
of row tuples.  Everything in this module is a pure function; nothing
rounds, ever.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]
Matrix = tuple[Vector, ...]
IntMatrix = tuple[IntVector, ...]


class DimensionError(ValueError):
    """Raised when vector/matrix dimensions do not line up."""


def frac(x) -> Fraction:
    """Coerce an int, a string like ``"3/4"``, or a Fraction to Fraction.

    Floats are rejected: this library is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}: {x!r}")


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot: {len(u)} vs {len(v)}")
    return sum((frac(a) * frac(b) for a, b in zip(u, v)), Fraction(0))


def idot(u: Sequence[int], v: Sequence[int]) -> int:
    """Integer dot product (no coercion, hot path)."""
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vadd: {len(u)} vs {len(v)}")
    return tuple(frac(a) + frac(b) for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vsub: {len(u)} vs {len(v)}")
    return tuple(frac(a) - frac(b) for a, b in zip(u, v))


def vneg(u: Sequence) -> Vector:
    return tuple(-frac(a) for a in u)


def vscale(c, u: Sequence) -> Vector:
    c = frac(c)
    return tuple(c * frac(a) for a in u)


def is_zero_vector(u: Sequence) -> bool:
    return all(frac(a) == 0 for a in u)


def primitive(v: Sequence) -> IntVector:
    """Scale a nonzero rational vector by a positive rational so it becomes
    an integer vector with gcd of entries equal to 1.  Direction is kept."""
    w = vec(v)
    if is_zero_vector(w):
        raise ValueError("primitive: zero vector has no primitive form")
    den = lcm(*[x.denominator for x in w]) if len(w) > 1 else w[0].denominator
    ints = [int(x * den) for x in w]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints)


def mat(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("mat: ragged rows")
    return m


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a)) if a else ()


def mat_vec(a: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(dot(row, x) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]):
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def _int_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], Fraction]:
    """Clear denominators row by row; return int rows and the product of the
    scaling factors (the determinant of the original equals det(int)/factor)."""
    out = []
    factor = Fraction(1)
    for row in rows:
        r = vec(row)
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        factor *= den
        out.append([int(x * den) for x in r])
    return out, factor


def determinant(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant: matrix is not square")
    if n == 0:
        return Fraction(1)
    m, factor = _int_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = piv
    return Fraction(sign * m[n - 1][n - 1], 1) / factor


def solve_linear(a: Sequence[Sequence], b: Sequence) -> Optional[Vector]:
    """Solve a·x = b exactly.

    Accepts square or overdetermined systems.  Returns the unique solution,
    or None when the system is inconsistent or underdetermined (no unique
    solution).  Forward elimination is fraction-free on the integer-scaled
    augmented matrix; back substitution is done in Fractions.
    """
    rows = [list(r) for r in a]
    if len(rows) != len(b):
        raise DimensionError(f"solve_linear: {len(rows)} rows vs {len(b)} rhs")
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(r) + [rhs] for r, rhs in zip(rows, b)]
    m, _ = _int_rows(aug)
    nrows = len(m)
    pivots: list[tuple[int, int]] = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv_row = i
                break
        if piv_row is None:
            continue
        m[r], m[piv_row] = m[piv_row], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols + 1):
                m[i][j] = (m[i][j] * piv - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = piv
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if any(m[i][j] != 0 for j in range(ncols)):
            raise AssertionError("echelon failed")  # pragma: no cover
        if m[i][ncols] != 0:
            return None  # inconsistent
    if len(pivots) < ncols:
        return None  # underdetermined
    x: list[Fraction] = [Fraction(0)] * ncols
    for (i, c) in reversed(pivots):
        s = Fraction(m[i][ncols])
        for j in range(c + 1, ncols):
            s -= m[i][j] * x[j]
        x[c] = s / m[i][c]
    return tuple(x)


def _rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    m = [[frac(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(_rref(rows)[1])


def kernel_basis(rows: Sequence[Sequence]) -> list[Vector]:
    """Basis of the right kernel {x : a·x = 0}, as rational vectors."""
    if not rows:
        raise ValueError("kernel_basis: need the ambient dimension, got no rows")
    ncols = len(rows[0])
    m, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -m[i][f]
        basis.append(tuple(x))
    return basis


def mat_inverse(rows: Sequence[Sequence]) -> Matrix:
    """Exact inverse of a square nonsingular matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("mat_inverse: matrix is not square")
    aug = [list(vec(r)) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, r in enumerate(rows)]
    m, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ValueError("mat_inverse: singular matrix")
    return tuple(tuple(m[i][n:]) for i in range(n))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, q):
    """row[dst] += q * row[src]"""
    m[dst] = [a + q * b for a, b in zip(m[dst], m[src])]


def _add_col(m, dst, src, q):
    for row in m:
        row[dst] += q * row[src]


def smith_normal_form(a: Sequence[Sequence[int]]
                      ) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form of an integer matrix with full column rank.

    Returns unimodular U (m×m), diagonal D (m×n), unimodular V (n×n) with
    U·A·V = D and d_1 | d_2 | ... | d_n, all d_i > 0.  Uses plain gcd
    row/column reduction; fine for the small matrices this library meets.

    Raises ValueError if the matrix does not have full column rank.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if any(len(r) != ncols for r in a):
        raise DimensionError("smith_normal_form: ragged rows")
    if any(not isinstance(x, int) for r in a for x in r):
        raise TypeError("smith_normal_form: entries must be int")
    d = [list(r) for r in a]
    u = [list(r) for r in identity_matrix(nrows)]
    v = [list(r) for r in identity_matrix(ncols)]

    def pivot_at(t: int) -> Optional[tuple[int, int]]:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        return best

    for t in range(min(nrows, ncols)):
        while True:
            pos = pivot_at(t)
            if pos is None:
                break
            i, j = pos
            if i != t:
                _swap_rows(d, t, i)
                _swap_rows(u, t, i)
            if j != t:
                _swap_cols(d, t, j)
                _swap_cols(v, t, j)
            piv = d[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if d[i][t] != 0:
                    q = d[i][t] // piv
                    _add_row(d, i, t, -q)
                    _add_row(u, i, t, -q)
                    if d[i][t] != 0:
                        dirty = True
            for j in range(t + 1, ncols):
                if d[t][j] != 0:
                    q = d[t][j] // piv
                    _add_col(d, j, t, -q)
                    _add_col(v, j, t, -q)
                    if d[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot clean; enforce divisibility of the remaining block
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if d[i][j] % piv != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(d, t, offender, 1)
            _add_row(u, t, offender, 1)
        if t < ncols and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    for t in range(ncols):
        if t >= nrows or d[t][t] == 0:
            raise ValueError("smith_normal_form: matrix is rank-deficient")
    return (tuple(tuple(r) for r in u),
            tuple(tuple(r) for r in d),
            tuple(tuple(r) for r in v))


def int_matrix_inverse(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = mat_inverse(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("int_matrix_inverse: matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)
