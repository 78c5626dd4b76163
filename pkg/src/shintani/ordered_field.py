"""Rational functions in iterated infinitesimals, with an exact sign.

Elements live in the subfield of R((e_0))...((e_n)) generated over Q by
the infinitesimal variables.  Variable slot j of an ``nvars``-variable
element stands for the j-th variable of an increasing index list; each
variable is positive and infinitesimally smaller than every power of the
previous one.

The total order is determined by leading terms: exponent vectors are
compared at the HIGHEST index where they differ, and the smaller entry
there wins.  This makes the constant term dominate every variable, and
variable j+1 smaller than every power of variable j; a worked unit test
pins this scan direction, since "lexicographic" is often read the other
way around.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroPolynomial
from .exactnum import MPoly
from .linalg import sign as rsign


def exponent_key(exp):
    """Sort key realizing the exponent order (compare highest index first)."""
    return exp[::-1]


def leading_monomial(p: MPoly):
    """Leading (smallest) term of a nonzero polynomial: (exponent, coeff)."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no leading term")
    e = min(p.terms, key=exponent_key)
    return e, p.terms[e]


def sign_mpoly(p: MPoly) -> int:
    if p.is_zero():
        return 0
    _, c = leading_monomial(p)
    return rsign(c)


class OrderedElem:
    """Fraction num/den of multivariate polynomials with an exact sign.

    The representation is not reduced (no polynomial gcds); instead the
    denominator is normalized to a primitive integer polynomial with
    positive leading coefficient, which keeps coefficient growth in check
    and makes sign(num/den) = sign(num) * sign(den) cheap.  Equality and
    sign are representation independent.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.const(num.nvars, 1)
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator variable counts differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not den.is_one():
            c = den.content() * sign_mpoly(den)
            if c != 1:
                den = den.scalar_div(c)
                num = num.scalar_div(c)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rat(cls, nvars: int, c) -> "OrderedElem":
        return cls(MPoly.const(nvars, c))

    @classmethod
    def var(cls, nvars: int, i: int) -> "OrderedElem":
        return cls(MPoly.var(nvars, i))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def _lift(self, other) -> "OrderedElem":
        if isinstance(other, OrderedElem):
            if other.nvars != self.nvars:
                raise ValueError("operands live over different variable sets")
            return other
        if isinstance(other, MPoly):
            return OrderedElem(other)
        return OrderedElem.from_rat(self.nvars, other)

    # -- field arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if self.den is other.den or self.den == other.den:
            return OrderedElem(self.num + other.num, self.den)
        return OrderedElem(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return OrderedElem(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        return OrderedElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero element")
        return OrderedElem(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    # -- order ----------------------------------------------------------------

    def sign(self) -> int:
        if self.num.is_zero():
            return 0
        return sign_mpoly(self.num) * sign_mpoly(self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def compare(self, other) -> int:
        """sign(self - other); realizes f > g iff f - g is positive."""
        return (self - other).sign()

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (ValueError, TypeError):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def compare(f: OrderedElem, g) -> int:
    return f.compare(g)


# ---------------------------------------------------------------------------
# Re-indexing embeddings
# ---------------------------------------------------------------------------

def _iota_mpoly(i: int, p: MPoly) -> MPoly:
    n = p.nvars
    out = MPoly(n + 1)
    terms = {}
    for e, c in p.terms.items():
        new = [0] * (n + 1)
        for j, k in enumerate(e):
            target = j if j < i else j + 1
            new[target] = k
        terms[tuple(new)] = c
    out.terms = terms
    return out


def iota(i: int, x: OrderedElem) -> OrderedElem:
    """Order-preserving embedding into one more variable.

    The j-th variable of the source is sent to the j-th member of the
    target variable list with slot i removed.  Since the relative order
    of the variables is preserved, signs and comparisons are preserved.
    """
    n = x.nvars
    if not 0 <= i <= n:
        raise ValueError(f"embedding index {i} out of range 0..{n}")
    return OrderedElem(_iota_mpoly(i, x.num), _iota_mpoly(i, x.den))


# ---------------------------------------------------------------------------
# Vectors and determinants over the ordered field
# ---------------------------------------------------------------------------

def as_elem(x, nvars: int) -> OrderedElem:
    if isinstance(x, OrderedElem):
        if x.nvars != nvars:
            raise ValueError("mixed variable counts")
        return x
    if isinstance(x, MPoly):
        if x.nvars != nvars:
            raise ValueError("mixed variable counts")
        return OrderedElem(x)
    return OrderedElem.from_rat(nvars, x)


def infer_nvars(vectors) -> int:
    nv = 0
    for v in vectors:
        for x in v:
            if isinstance(x, (OrderedElem, MPoly)):
                nv = max(nv, x.nvars)
    return nv


def clear_denominators(vec) -> list[MPoly]:
    """Multiply an ordered-field vector by the (positive) product of its
    entry denominators, returning polynomial entries; positive scaling
    leaves every sign test on the vector configuration unchanged."""
    k = len(vec)
    one = MPoly.const(vec[0].nvars, 1) if vec else None
    prefix = [one] * (k + 1)
    for i, x in enumerate(vec):
        prefix[i + 1] = prefix[i] if x.den.is_one() else prefix[i] * x.den
    suffix = [one] * (k + 1)
    for i in range(k - 1, -1, -1):
        x = vec[i]
        suffix[i] = suffix[i + 1] if x.den.is_one() else suffix[i + 1] * x.den
    return [x.num * prefix[i] * suffix[i + 1] for i, x in enumerate(vec)]


def det_mpoly_columns(cols: list[list[MPoly]]) -> MPoly:
    """Determinant of a square matrix given by polynomial columns,
    by expansion along columns with minors memoized on row subsets."""
    n = len(cols)
    if n == 0:
        raise ValueError("empty matrix")
    nvars = cols[0][0].nvars
    memo = {}

    def minor(col_start: int, rows: tuple) -> MPoly:
        if col_start == n:
            return MPoly.const(nvars, 1)
        key = (col_start, rows)
        got = memo.get(key)
        if got is not None:
            return got
        acc = MPoly.zero(nvars)
        col = cols[col_start]
        for pos, r in enumerate(rows):
            entry = col[r]
            if entry.is_zero():
                continue
            sub = minor(col_start + 1, rows[:pos] + rows[pos + 1:])
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def det_columns(cols) -> OrderedElem:
    """Determinant over the ordered field; entries may be OrderedElem,
    MPoly or rationals."""
    nvars = infer_nvars(cols)
    lifted = [[as_elem(x, nvars) for x in col] for col in cols]
    den_total = MPoly.const(nvars, 1)
    poly_cols = []
    for col in lifted:
        cleared = clear_denominators(col)
        poly_cols.append(cleared)
        for x in col:
            if not x.den.is_one():
                den_total = den_total * x.den
    d = det_mpoly_columns(poly_cols)
    return OrderedElem(d, den_total)
