"""Signed combinations of relatively open simplicial rational cones.

A combo is a finite list of (rational coefficient, open simplicial cone)
plus an explicit constant offset; evaluation at a nonzero rational point
is the coefficient-weighted membership sum.  The decomposition routine
turns a pointwise cocycle value into such a combo with the same values
everywhere, by refining a fan against the hyperplanes on which the
cocycle's Cramer sign data can flip and reading the value off one
interior witness per piece.

The refinement step is a sequential split of relatively open simplicial
cones along hyperplanes.  Each split keeps the pieces disjoint,
relatively open and simplicial; in ambient dimension <= 3 a case table
covers every mixed-sign pattern of a hyperplane on at most three
generators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .cocycle_core import SigmaKernel
from .errors import AllFormsZero, SingularMatrix, UnsupportedDimension, ZeroVector
from .linalg import (
    dot,
    frac,
    mat_det,
    mat_inv,
    mat_vec,
    primitive,
    rank,
    sign as rsign,
)
from .ordered_field import exponent_key


def _int_scale_point(w):
    """Positive integer multiple of a rational point, as plain ints."""
    w = tuple(frac(x) for x in w)
    den = 1
    for x in w:
        den = lcm(den, x.denominator)
    return tuple(int(x * den) for x in w)


@dataclass(frozen=True)
class OpenSimplicialCone:
    """Relatively open cone of linearly independent rational generators:
    strictly positive combinations only."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(frac(x) for x in g) for g in self.generators)
        if not gens:
            raise ValueError("a cone needs at least one generator")
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ValueError("generator dimensions differ")
        if len(gens) > n or rank(gens) != len(gens):
            raise ValueError("generators must be linearly independent")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_tester", None)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def ambient(self) -> int:
        return len(self.generators[0])

    def _build_tester(self):
        """Integer rows deciding membership with dot products only: extend
        the generators greedily by standard basis vectors to a square
        matrix, invert it once, and scale the inverse rows to integers.
        The first r rows must be positive at w and the rest zero."""
        n = self.ambient
        cols = list(self.generators)
        for i in range(n):
            if len(cols) == n:
                break
            e = tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
            if rank(cols + [e]) == len(cols) + 1:
                cols.append(e)
        inv = mat_inv(tuple(tuple(col[i] for col in cols) for i in range(n)))
        coord_rows = tuple(
            tuple(int(x) for x in primitive(row)) for row in inv[: self.dim]
        )
        span_rows = tuple(
            tuple(int(x) for x in primitive(row)) for row in inv[self.dim:]
        )
        tester = (coord_rows, span_rows)
        object.__setattr__(self, "_tester", tester)
        return tester

    def _contains_scaled(self, wi) -> bool:
        """Membership test against an integer multiple of the point; any
        positive rescaling of w leaves cone membership unchanged."""
        coord_rows, span_rows = self._tester or self._build_tester()
        for row in span_rows:
            if sum(a * b for a, b in zip(row, wi)) != 0:
                return False
        for row in coord_rows:
            if sum(a * b for a, b in zip(row, wi)) <= 0:
                return False
        return True

    def contains(self, w) -> bool:
        return self._contains_scaled(_int_scale_point(w))

    def witness(self):
        """A rational interior point: the sum of the generators."""
        n = self.ambient
        acc = [Fraction(0)] * n
        for g in self.generators:
            for i in range(n):
                acc[i] += g[i]
        return tuple(acc)

    def sort_key(self):
        return tuple(
            (x.numerator, x.denominator) for g in self.generators for x in g
        )


class ConeCombo:
    """Finite signed combination of open simplicial cones plus a constant."""

    def __init__(self, terms=(), constant=0):
        self.terms = tuple(
            (frac(c), cone if isinstance(cone, OpenSimplicialCone)
             else OpenSimplicialCone(tuple(cone)))
            for c, cone in terms
        )
        self.constant = frac(constant)

    def eval(self, w) -> Fraction:
        wi = _int_scale_point(w)
        if all(x == 0 for x in wi):
            raise ZeroVector("combos are functions on nonzero points")
        total = Fraction(self.constant)
        for c, cone in self.terms:
            if cone._contains_scaled(wi):
                total += c
        return total

    def scale(self, c) -> "ConeCombo":
        c = frac(c)
        return ConeCombo([(c * k, cone) for k, cone in self.terms], c * self.constant)

    def __add__(self, other: "ConeCombo") -> "ConeCombo":
        return ConeCombo(self.terms + other.terms, self.constant + other.constant)

    def sorted(self) -> "ConeCombo":
        terms = sorted(self.terms, key=lambda t: t[1].sort_key())
        return ConeCombo(terms, self.constant)

    def to_json(self) -> dict:
        return {
            "cones": [
                {
                    "coeff": str(c),
                    "generators": [[str(x) for x in g] for g in cone.generators],
                }
                for c, cone in self.terms
            ],
            "constant": str(self.constant),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ConeCombo":
        terms = [
            (Fraction(entry["coeff"]),
             OpenSimplicialCone(tuple(tuple(Fraction(x) for x in g)
                                      for g in entry["generators"])))
            for entry in doc.get("cones", [])
        ]
        return cls(terms, Fraction(doc.get("constant", "0")))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def combo_eval(combo: ConeCombo, w) -> Fraction:
    return combo.eval(w)


def act(alpha, combo: ConeCombo) -> ConeCombo:
    """Push a combo forward along an invertible rational matrix: map the
    generators and multiply every weight by the determinant sign, so that
    eval(act(a, c), w) = sign(det a) * eval(c, a^(-1) w)."""
    alpha = tuple(tuple(frac(x) for x in row) for row in alpha)
    d = mat_det(alpha)
    if d == 0:
        raise SingularMatrix("combo action needs an invertible matrix")
    s = rsign(d)
    terms = [
        (s * c, OpenSimplicialCone(tuple(mat_vec(alpha, g) for g in cone.generators)))
        for c, cone in combo.terms
    ]
    return ConeCombo(terms, s * combo.constant)


# ---------------------------------------------------------------------------
# Lexicographic linear form lists
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LexLinearForm:
    """Finite list of rational linear forms ordered by increasing
    infinitesimal exponent; the positivity region is the set of points
    where the first form with a nonzero value is positive."""

    forms: tuple

    def __post_init__(self):
        forms = tuple(tuple(frac(x) for x in f) for f in self.forms)
        forms = tuple(f for f in forms if any(x != 0 for x in f))
        object.__setattr__(self, "forms", forms)

    def first_nonzero_sign(self, w) -> int:
        for f in self.forms:
            s = rsign(dot(f, w))
            if s:
                return s
        return 0


# ---------------------------------------------------------------------------
# Fan refinement by hyperplane splitting.  The refinement loop runs in
# plain integer arithmetic: generators and forms are primitive integer
# vectors, which positive scaling makes harmless for every sign test.
# ---------------------------------------------------------------------------

def _int_primitive(vec):
    """Primitive integer vector (plain ints) in the same direction."""
    den = 1
    nums = []
    for x in vec:
        x = frac(x)
        nums.append(x)
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in nums]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(v // g for v in ints)


def _int_canon(vec):
    p = _int_primitive(vec)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    raise ValueError("zero vector")


def _idot(f, g) -> int:
    return sum(a * b for a, b in zip(f, g))


def _start_pieces(n: int):
    """The relatively open faces of the fan of coordinate orthants: a
    disjoint cover of the punctured space by open simplicial cones."""
    pieces = []
    for signs in product((-1, 0, 1), repeat=n):
        gens = tuple(
            tuple(s if j == i else 0 for j in range(n))
            for i, s in enumerate(signs) if s
        )
        if gens:
            pieces.append(gens)
    return pieces


def _cross(vp, vq, hp, hq):
    """Positive combination of the generators vp, vq on which the split
    form vanishes: hp * vq - hq * vp with hp > 0 > hq."""
    vec = tuple(hp * b - hq * a for a, b in zip(vp, vq))
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    return tuple(v // g for v in vec)


def _split_piece(gens, form):
    """Split one relatively open simplicial cone along a hyperplane into
    relatively open simplicial pieces (dimension of the cone <= 3)."""
    vals = [_idot(form, g) for g in gens]
    pos = [i for i, v in enumerate(vals) if v > 0]
    neg = [i for i, v in enumerate(vals) if v < 0]
    if not pos or not neg:
        return (gens,)
    r = len(gens)
    if r == 2:
        p, q = pos[0], neg[0]
        m = _cross(gens[p], gens[q], vals[p], vals[q])
        return ((gens[p], m), (m,), (m, gens[q]))
    if r == 3:
        zero = [i for i, v in enumerate(vals) if v == 0]
        if zero:
            p, q, z = pos[0], neg[0], zero[0]
            m = _cross(gens[p], gens[q], vals[p], vals[q])
            return (
                (gens[p], m, gens[z]),
                (m, gens[z]),
                (m, gens[q], gens[z]),
            )
        if len(pos) == 1:
            p = pos[0]
            q1, q2 = neg
            m1 = _cross(gens[p], gens[q1], vals[p], vals[q1])
            m2 = _cross(gens[p], gens[q2], vals[p], vals[q2])
            return (
                (gens[p], m1, m2),
                (m1, m2),
                (m1, gens[q1], gens[q2]),
                (m1, gens[q2]),
                (m1, m2, gens[q2]),
            )
        q = neg[0]
        p1, p2 = pos
        m1 = _cross(gens[p1], gens[q], vals[p1], vals[q])
        m2 = _cross(gens[p2], gens[q], vals[p2], vals[q])
        return (
            (gens[q], m1, m2),
            (m1, m2),
            (m1, gens[p1], gens[p2]),
            (m1, gens[p2]),
            (m1, m2, gens[p2]),
        )
    raise UnsupportedDimension("splitting supports cones of dimension <= 3")


def refine_fan(n: int, forms):
    """Disjoint relatively open simplicial cover of the punctured space on
    which every given linear form has a constant sign.  Pieces come back
    as tuples of primitive integer generators."""
    dedup = {}
    for f in forms:
        if any(x != 0 for x in f):
            dedup[_int_canon(f)] = None
    pieces = _start_pieces(n)
    for form in dedup:
        pieces = [q for p in pieces for q in _split_piece(p, form)]
    return pieces


# ---------------------------------------------------------------------------
# Decomposition of the cocycle into a cone combo
# ---------------------------------------------------------------------------

def sigma_forms(alphas):
    """Prepared sign data: determinant sign and, per slot, the list of
    linear coefficient forms of the Cramer numerator ordered by the
    infinitesimal exponent order."""
    kernel = SigmaKernel(alphas)
    lists = []
    for i in range(kernel.n):
        by_exp = kernel.coefficient_forms(i)
        ordered = [by_exp[e] for e in sorted(by_exp, key=exponent_key)]
        lists.append(LexLinearForm(tuple(ordered)))
    return kernel, lists


def _int_witness(gens):
    n = len(gens[0])
    return tuple(sum(g[i] for g in gens) for i in range(n))


def _first_nonzero_sign_int(forms, w) -> int:
    for f in forms:
        v = _idot(f, w)
        if v:
            return 1 if v > 0 else -1
    return 0


def _classify_piece(gens, int_lists, target):
    """Decide the lexicographic sign data of one piece, or report a form
    to split by.

    Returns ('drop', None) when some list already resolves to a sign other
    than the target on the whole piece, ('keep', None) when every list
    resolves to the target, and ('split', form) when a form has mixed
    signs on the piece so the answer is not yet constant.
    """
    for forms in int_lists:
        decided = None
        for f in forms:
            vals = [_idot(f, g) for g in gens]
            pos = any(v > 0 for v in vals)
            neg = any(v < 0 for v in vals)
            if pos and neg:
                return "split", f
            if pos:
                decided = 1
                break
            if neg:
                decided = -1
                break
            # identically zero on the span of the piece: next form decides
        if decided is None:
            decided = 0
        if decided != target:
            return "drop", None
    return "keep", None


def _decompose_region(n, int_lists, target):
    """Relatively open simplicial pieces exactly covering the region where
    every lexicographic list resolves to the target sign.  Pieces are
    split only while some list is still ambiguous on them, and pieces with
    a resolved non-target sign are dropped immediately."""
    work = list(_start_pieces(n))
    kept = []
    while work:
        gens = work.pop()
        status, form = _classify_piece(gens, int_lists, target)
        if status == "keep":
            kept.append(gens)
        elif status == "split":
            work.extend(_split_piece(gens, form))
    return kept


def sigma_decompose(alphas, validate: bool = False) -> ConeCombo:
    """Exact cone-combo representative of the cocycle value: a signed
    disjoint union of relatively open simplicial rational cones whose
    membership sum matches the pointwise evaluation everywhere.

    Supported for 1 <= n <= 3 matrices.  When ``validate`` is set, every
    piece witness is cross-checked against the pointwise evaluator.
    """
    alphas = list(alphas)
    n = len(alphas)
    if n > 3:
        raise UnsupportedDimension("decomposition implemented for n <= 3")
    kernel, lists = sigma_forms(alphas)
    int_lists = [
        tuple(_int_primitive(f) for f in lst.forms) for lst in lists
    ]
    target = kernel.det_sign
    pieces = _decompose_region(n, int_lists, target)
    terms = []
    for gens in pieces:
        if validate:
            w = _int_witness(gens)
            if any(_first_nonzero_sign_int(fs, w) != target for fs in int_lists):
                raise AssertionError("kept piece fails the sign resolution")
            if kernel.eval(w) != target:
                raise AssertionError("decomposition witness mismatch")
        terms.append((target, OpenSimplicialCone(gens)))
    return ConeCombo(terms).sorted()


def lex_positive_region(form_list) -> ConeCombo:
    """Indicator combo of the region where the first nonzero form of the
    list is positive."""
    if isinstance(form_list, LexLinearForm):
        lex = form_list
    else:
        lex = LexLinearForm(tuple(tuple(frac(x) for x in f) for f in form_list))
    if not lex.forms:
        raise AllFormsZero("need at least one nonzero form")
    n = len(lex.forms[0])
    int_forms = tuple(_int_primitive(f) for f in lex.forms)
    pieces = _decompose_region(n, [int_forms], 1)
    terms = [(1, OpenSimplicialCone(gens)) for gens in pieces]
    return ConeCombo(terms).sorted()
