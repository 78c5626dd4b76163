"""Small exact linear algebra helpers over the rationals.

Vectors are tuples of Fraction, matrices are tuples of row tuples.
Everything is immutable and all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import SingularMatrix

Vec = tuple
Mat = tuple


def frac(x) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def vector(entries) -> Vec:
    return tuple(frac(x) for x in entries)


def matrix(rows) -> Mat:
    m = tuple(tuple(frac(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_add(u, v) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u) -> Vec:
    c = frac(c)
    return tuple(c * a for a in u)


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m, v) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_det(m) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    n = len(m)
    a = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def mat_inv(m) -> Mat:
    n = len(m)
    a = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_columns(cols, w):
    """Solve sum_i x_i * cols[i] = w for linearly independent columns.

    Returns the coefficient list, or None when w is outside the span.
    Raises SingularMatrix if the columns are dependent.
    """
    n = len(w)
    r = len(cols)
    a = [[cols[j][i] for j in range(r)] + [w[i]] for i in range(n)]
    row = 0
    pivots = []
    for col in range(r):
        piv = next((k for k in range(row, n) if a[k][col] != 0), None)
        if piv is None:
            raise SingularMatrix("columns are linearly dependent")
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for k in range(n):
            if k != row and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[row])]
        pivots.append(row)
        row += 1
    for k in range(row, n):
        if a[k][r] != 0:
            return None
    return [a[pivots[col]][r] for col in range(r)]


def rank(cols) -> int:
    if not cols:
        return 0
    n = len(cols[0])
    a = [[c[i] for c in cols] for i in range(n)]
    r = 0
    for col in range(len(cols)):
        piv = next((k for k in range(r, n) if a[k][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for k in range(n):
            if k != r and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        r += 1
    return r


def primitive(vec) -> Vec:
    """Scale a nonzero rational vector by a positive rational so the entries
    become coprime integers; the direction is preserved."""
    den_lcm = 1
    for x in vec:
        den_lcm = den_lcm * x.denominator // gcd(den_lcm, x.denominator)
    ints = [int(x * den_lcm) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(Fraction(v // g) for v in ints)


def canon_sign(vec) -> Vec:
    """Primitive form with the first nonzero entry positive (identifies a
    hyperplane regardless of the side convention)."""
    p = primitive(vec)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    raise ValueError("zero vector")


def sign(x) -> int:
    return (x > 0) - (x < 0)
