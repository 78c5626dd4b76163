"""Exact arithmetic substrate.

Provides arbitrary-precision rationals (stdlib Fraction under the alias
``Rat``), sparse multivariate polynomials over the rationals, Bernoulli
numbers and polynomials, and the two-generator coefficient ring

    Q[g1, g2] / (Phi_m(g1), g2^2 - D)

which holds roots of unity (character values) and square roots of a
square-free integer (real quadratic embeddings).  No floating point is
used anywhere.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, gcd

from .errors import ShintaniError

Rat = Fraction


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


def rat_to_str(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------

class MPoly:
    """Sparse polynomial in a fixed number of variables over Q.

    Terms map exponent tuples (length ``nvars``, non-negative ints) to
    nonzero Fraction coefficients; zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        c = Fraction(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exp, c) -> "MPoly":
        exp = tuple(exp)
        if len(exp) != nvars or any(k < 0 for k in exp):
            raise ValueError("bad exponent vector")
        return cls(nvars, {exp: Fraction(c)})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: Fraction(1)}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def content(self) -> Fraction:
        """Positive rational c with self/c an integer polynomial of
        coprime coefficients.  Zero polynomial has content 1."""
        if not self.terms:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise ValueError("operand variable counts differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = MPoly(self.nvars)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MPoly(self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            r = MPoly(self.nvars)
            if c != 0:
                r.terms = {e: c * v for e, v in self.terms.items()}
            return r
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = MPoly(self.nvars)
        r.terms = out
        return r

    __rmul__ = __mul__

    def scalar_div(self, c) -> "MPoly":
        """Exact division by a nonzero rational scalar."""
        c = Fraction(c)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (1 / c)

    def evaluate(self, point) -> Fraction:
        """Evaluate at a rational point (mostly for tests)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for k, x in zip(e, point):
                if k:
                    t *= Fraction(x) ** k
            total += t
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"e{i}" if k == 1 else f"e{i}^{k}" for i, k in enumerate(e) if k
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials, convention B_1 = -1/2
# ---------------------------------------------------------------------------

class BernoulliTable:
    """Cached Bernoulli numbers, extended on demand.

    Uses the defining recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1,
    which forces B_0 = 1 and B_1 = -1/2.  Extension is guarded by a lock so
    the cache is safe to grow from concurrent tasks.
    """

    def __init__(self):
        self._values = [Fraction(1)]
        self._lock = threading.Lock()

    def get(self, m: int) -> Fraction:
        if m < 0:
            raise ValueError("Bernoulli index must be non-negative")
        if m >= len(self._values):
            with self._lock:
                while len(self._values) <= m:
                    k = len(self._values)
                    acc = sum(
                        comb(k + 1, j) * self._values[j] for j in range(k)
                    )
                    self._values.append(Fraction(-acc, k + 1))
        return self._values[m]


_BERNOULLI = BernoulliTable()


def bernoulli_number(m: int) -> Fraction:
    """B_m with B_1 = -1/2 (generating function t / (e^t - 1))."""
    return _BERNOULLI.get(m)


def bernoulli_poly(m: int, x) -> Fraction:
    """B_m(x) = sum_j C(m, j) B_j x^(m-j)."""
    if m < 0:
        raise ValueError("Bernoulli index must be non-negative")
    x = Fraction(x)
    return sum(
        (comb(m, j) * bernoulli_number(j) * x ** (m - j) for j in range(m + 1)),
        Fraction(0),
    )


# ---------------------------------------------------------------------------
# Cyclotomic polynomials
# ---------------------------------------------------------------------------

def _poly_divmod_int(num, den):
    """Division of integer coefficient lists (little-endian), exact use only."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, r = divmod(num[k + len(den) - 1], den[-1])
        q[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    return q, num[: len(den) - 1]


_CYCLOTOMIC_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m (little-endian), by dividing x^m - 1 by the
    cyclotomic polynomials of the proper divisors of m."""
    if m < 1:
        raise ValueError("cyclotomic order must be >= 1")
    if m in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[m]
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            if any(rem):
                raise ShintaniError("cyclotomic division failed")
            poly = q
    out = tuple(poly)
    _CYCLOTOMIC_CACHE[m] = out
    return out


# ---------------------------------------------------------------------------
# Coefficient ring Q(zeta_m, sqrt(D))
# ---------------------------------------------------------------------------

class CoeffRing:
    """Q[g1, g2] / (Phi_m(g1), g2^2 - D), elements stored fully reduced.

    m = 1 and D = None degenerate to Q itself.  Only positive square-free
    D > 1 is accepted.  Basis monomials are g1^i * g2^j with
    0 <= i < deg(Phi_m) and j in {0} or {0, 1}.
    """

    def __init__(self, m: int = 1, D=None):
        if m < 1:
            raise ValueError("cyclotomic order must be >= 1")
        if D is not None:
            D = int(D)
            if D <= 1:
                raise ValueError("D must exceed 1")
        self.m = m
        self.D = D
        phi = cyclotomic_poly(m)
        self.deg = len(phi) - 1
        lead = phi[-1]  # cyclotomic polynomials are monic
        assert lead == 1
        # reduction vectors for g1^k, k = deg .. 2*deg-2
        red = []
        prev = [Fraction(-c) for c in phi[:-1]]
        red.append(list(prev))
        for _ in range(self.deg - 2):
            nxt = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                for i in range(self.deg):
                    nxt[i] += top * red[0][i]
            red.append(nxt)
            prev = nxt
        self._reduction = red
        self._jrange = (0, 1) if D is not None else (0,)

    # -- identity / comparison ---------------------------------------------

    def same(self, other: "CoeffRing") -> bool:
        return self.m == other.m and self.D == other.D

    def __repr__(self):
        tail = f", sqrt {self.D}" if self.D is not None else ""
        return f"CoeffRing(zeta order {self.m}{tail})"

    # -- constructors --------------------------------------------------------

    def elem(self, coeffs) -> "CoeffElem":
        return CoeffElem(self, {k: Fraction(v) for k, v in coeffs.items() if v != 0})

    def zero(self) -> "CoeffElem":
        return CoeffElem(self, {})

    def one(self) -> "CoeffElem":
        return CoeffElem(self, {(0, 0): Fraction(1)})

    def from_rat(self, c) -> "CoeffElem":
        c = Fraction(c)
        return CoeffElem(self, {(0, 0): c} if c else {})

    def zeta(self, power: int = 1) -> "CoeffElem":
        """g1^power reduced into the basis."""
        power %= self.m
        return self._reduce_g1_power(power)

    def sqrtD(self) -> "CoeffElem":
        if self.D is None:
            raise ShintaniError("ring has no square root generator")
        return CoeffElem(self, {(0, 1): Fraction(1)})

    def _reduce_g1_power(self, k: int) -> "CoeffElem":
        if k < self.deg:
            return CoeffElem(self, {(k, 0): Fraction(1)})
        vec = [Fraction(0)] * self.deg
        vec[self.deg - 1] = Fraction(1)
        for _ in range(k - self.deg + 1):
            top = vec[-1]
            vec = [Fraction(0)] + vec[:-1]
            if top:
                for i in range(self.deg):
                    vec[i] += top * self._reduction[0][i]
        return CoeffElem(self, {(i, 0): c for i, c in enumerate(vec) if c})

    def coerce(self, x) -> "CoeffElem":
        """Accept elements of this ring, of a compatible smaller ring
        (cyclotomic order dividing ours, same or absent sqrt), rationals."""
        if isinstance(x, CoeffElem):
            if x.ring.same(self):
                return x
            if self.m % x.ring.m == 0 and x.ring.D in (None, self.D):
                k = self.m // x.ring.m
                out = self.zero()
                for (i, j), c in x.coeffs.items():
                    piece = self._reduce_g1_power((i * k) % self.m) * c
                    if j:
                        piece = piece * self.sqrtD()
                    out = out + piece
                return out
            raise ShintaniError(f"cannot coerce between {x.ring} and {self}")
        return self.from_rat(x)

    def basis(self):
        return [(i, j) for j in self._jrange for i in range(self.deg)]


class CoeffElem:
    """Element of a CoeffRing; coefficients over the reduced monomial basis."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CoeffRing, coeffs: dict):
        self.ring = ring
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_rat(other)
        if not isinstance(other, CoeffElem):
            return NotImplemented
        return self.ring.same(other.ring) and self.coeffs == other.coeffs

    __hash__ = None

    def _lift(self, other) -> "CoeffElem":
        if isinstance(other, CoeffElem):
            if not other.ring.same(self.ring):
                raise ShintaniError("mixed coefficient rings")
            return other
        return self.ring.from_rat(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return CoeffElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return CoeffElem(self.ring, {k: c * v for k, v in self.coeffs.items()})
        other = self._lift(other)
        ring = self.ring
        acc = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                c = c1 * c2
                i = i1 + i2
                j = j1 + j2
                if j == 2:
                    c *= ring.D
                    j = 0
                if i < ring.deg:
                    k = (i, j)
                    s = acc.get(k, 0) + c
                    if s:
                        acc[k] = s
                    else:
                        acc.pop(k, None)
                else:
                    red = ring._reduction[i - ring.deg]
                    for t, rc in enumerate(red):
                        if rc:
                            k = (t, j)
                            s = acc.get(k, 0) + c * rc
                            if s:
                                acc[k] = s
                            else:
                                acc.pop(k, None)
        return CoeffElem(ring, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self) -> "CoeffElem":
        """Multiplicative inverse via an exact linear solve over the
        rational basis.  Raises if the element is not a unit."""
        ring = self.ring
        basis = ring.basis()
        idx = {b: i for i, b in enumerate(basis)}
        nb = len(basis)
        cols = []
        for b in basis:
            prod = self * CoeffElem(ring, {b: Fraction(1)})
            col = [Fraction(0)] * nb
            for k, c in prod.coeffs.items():
                col[idx[k]] = c
            cols.append(col)
        # solve M x = e_0 where M columns are self * basis elements
        a = [[cols[j][i] for j in range(nb)] + [Fraction(1 if basis[i] == (0, 0) else 0)]
             for i in range(nb)]
        for col in range(nb):
            piv = next((r for r in range(col, nb) if a[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("element is not invertible in the ring")
            a[col], a[piv] = a[piv], a[col]
            scale = 1 / a[col][col]
            a[col] = [x * scale for x in a[col]]
            for r in range(nb):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        coeffs = {basis[i]: a[i][nb] for i in range(nb) if a[i][nb] != 0}
        return CoeffElem(ring, coeffs)

    def is_rational(self) -> bool:
        return all(k == (0, 0) for k in self.coeffs)

    def rational_part(self) -> Fraction:
        return self.coeffs.get((0, 0), Fraction(0))

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ShintaniError("element is not rational")
        return self.rational_part()

    def key(self):
        """Canonical hashable key, used for sorting and dict membership."""
        return tuple(sorted(
            (k, (c.numerator, c.denominator)) for k, c in self.coeffs.items()
        ))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (i, j), c in sorted(self.coeffs.items()):
            mono = ""
            if i:
                mono += f"z^{i}" if i > 1 else "z"
            if j:
                mono += "s"
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


QQ = CoeffRing(1, None)
