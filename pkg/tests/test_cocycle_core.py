import random
from fractions import Fraction

import pytest

from conftest import (
    random_general_position,
    random_invertible,
    random_nonzero_vector,
)
from shintani.cocycle_core import (
    CocycleChecker,
    closed_form_sigma_n2,
    coboundary_tau_half,
    cvalue,
    dvalue,
    moment_vector,
    sigma_eval,
    sigma_function,
    solomon_s,
    tau_cocycle,
    tau_transport,
)
from shintani.errors import (
    GeneralPositionViolation,
    SingularBasis,
    SingularMatrix,
    ZeroVector,
)
from shintani.exactnum import MPoly
from shintani.linalg import identity, mat_det, mat_inv, mat_mul, mat_vec, sign
from shintani.ordered_field import OrderedElem, iota


I2 = identity(2)


def _perm_sign(perm):
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


# ---------------------------------------------------------------------------
# The d invariant
# ---------------------------------------------------------------------------

def test_dvalue_dimension_one():
    assert dvalue([(1,), (-1,)]) == -1
    assert dvalue([(-1,), (1,)]) == 1
    assert dvalue([(1,), (1,)]) == 0


def test_dvalue_examples_dimension_two():
    assert dvalue([(1, 0), (0, 1), (-1, -1)]) == 1
    assert dvalue([(1, 0), (0, 1), (1, -1)]) == 0


def test_dvalue_general_position_checked():
    with pytest.raises(GeneralPositionViolation):
        dvalue([(1, 0), (2, 0), (0, 1)])


def test_dvalue_kernel_sign_oracle():
    # independent check: solve for the kernel vector by Cramer and compare
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(1, 3)
        vecs = random_general_position(rng, n, n + 1)
        cols = [tuple(v[i] for v in vecs) for i in range(n)]  # rows
        dets = []
        for i in range(n + 1):
            sub = [v for j, v in enumerate(vecs) if j != i]
            m = tuple(tuple(v[k] for v in sub) for k in range(n))
            dets.append(mat_det(m))
        lam = [(-1) ** i * d for i, d in enumerate(dets)]
        expected = sign(lam[0]) if all(
            sign(x) == sign(lam[0]) for x in lam
        ) else 0
        assert dvalue(vecs) == expected


def test_dvalue_permutation_rule():
    rng = random.Random(29)
    for _ in range(40):
        n = rng.randint(1, 3)
        vecs = random_general_position(rng, n, n + 1)
        base = dvalue(vecs)
        perm = list(range(n + 1))
        rng.shuffle(perm)
        assert dvalue([vecs[i] for i in perm]) == _perm_sign(perm) * base


def test_dvalue_positive_scaling():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 3)
        vecs = random_general_position(rng, n, n + 1)
        scaled = []
        for v in vecs:
            lam = Fraction(rng.randint(1, 5), rng.randint(1, 3))
            scaled.append(tuple(lam * x for x in v))
        assert dvalue(scaled) == dvalue(vecs)


def test_dvalue_matrix_equivariance():
    rng = random.Random(37)
    for _ in range(40):
        n = rng.randint(1, 3)
        vecs = random_general_position(rng, n, n + 1)
        a = random_invertible(rng, n)
        moved = [mat_vec(a, v) for v in vecs]
        assert dvalue(moved) == sign(mat_det(a)) * dvalue(vecs)


def test_dvalue_alternating_sum_vanishes():
    rng = random.Random(41)
    for _ in range(60):
        n = rng.randint(1, 3)
        vecs = random_general_position(rng, n, n + 2)
        total = 0
        for i in range(n + 2):
            sub = vecs[:i] + vecs[i + 1:]
            total += (-1) ** i * dvalue(sub)
        assert total == 0


def test_dvalue_embedding_invariance():
    # order-preserving embeddings leave the invariant unchanged
    rng = random.Random(43)
    for _ in range(30):
        vecs = random_general_position(rng, 2, 3)
        lifted = [
            tuple(OrderedElem.from_rat(2, x) for x in v) for v in vecs
        ]
        embedded = [tuple(iota(1, x) for x in v) for v in lifted]
        assert dvalue(embedded) == dvalue(vecs)


# ---------------------------------------------------------------------------
# The c function
# ---------------------------------------------------------------------------

def test_cvalue_examples():
    e1, e2 = (1, 0), (0, 1)
    assert cvalue([e1, e2], (1, 1)) == 1
    assert cvalue([e2, e1], (1, 1)) == -1
    assert cvalue([e1, e2], (-1, 1)) == 0


def test_cvalue_singular_basis():
    with pytest.raises(SingularBasis):
        cvalue([(1, 0), (2, 0)], (1, 1))


def test_cvalue_dvalue_relation():
    # c(v_1..v_n)(w) = (-1)^n d(v_1..v_n, -w) in general position
    rng = random.Random(47)
    for _ in range(60):
        n = rng.randint(1, 3)
        vecs = random_general_position(rng, n, n + 1)
        basis, w = vecs[:n], vecs[n]
        neg_w = tuple(-x for x in w)
        assert cvalue(basis, w) == (-1) ** n * dvalue(list(basis) + [neg_w])


def test_cvalue_cocycle_relation():
    # sum_i (-1)^i c(omit v_i)(w) = d(v_0..v_n)
    rng = random.Random(53)
    for _ in range(60):
        n = rng.randint(2, 3)
        vecs = random_general_position(rng, n, n + 2)
        tup, w = vecs[: n + 1], vecs[n + 1]
        total = 0
        for i in range(n + 1):
            sub = tup[:i] + tup[i + 1:]
            total += (-1) ** i * cvalue(sub, w)
        assert total == dvalue(tup)


# ---------------------------------------------------------------------------
# Cocycle evaluation
# ---------------------------------------------------------------------------

def test_moment_vector_entries():
    b = moment_vector(1, 3, 3)
    assert b[0] == MPoly.const(3, 1)
    assert b[1] == MPoly.var(3, 1)
    assert b[2] == MPoly.var(3, 1) * MPoly.var(3, 1)


def test_sigma_examples_from_closed_form_table():
    assert sigma_eval([I2, ((-1, 0), (0, 1))], (3, 2)) == 1
    assert sigma_eval([I2, ((1, 0), (0, -1))], (3, 0)) == -1
    assert sigma_eval([I2, ((-1, 0), (0, -1))], (-2, 0)) == 1


def test_sigma_rejects_bad_input():
    with pytest.raises(SingularMatrix):
        sigma_eval([I2, ((1, 0), (2, 0))], (1, 1))
    with pytest.raises(ZeroVector):
        sigma_eval([I2, I2], (0, 0))


def test_sigma_function_is_reusable():
    f = sigma_function([I2, ((-1, 0), (0, 1))])
    assert f((3, 2)) == 1
    assert f((3, -2)) == 0


def test_tau_equals_alternating_sigma_sum():
    rng = random.Random(59)
    for _ in range(25):
        n = rng.randint(2, 3)
        alphas = [random_invertible(rng, n) for _ in range(n + 1)]
        checker = CocycleChecker(alphas)
        assert checker.tau == tau_cocycle(alphas)
        for _ in range(10):
            w = random_nonzero_vector(rng, n)
            assert checker.alternating_sum(w) == checker.tau


def test_tau_with_repeated_matrices():
    rng = random.Random(61)
    for _ in range(15):
        n = rng.randint(2, 3)
        alphas = [random_invertible(rng, n) for _ in range(n + 1)]
        alphas[1] = alphas[0]
        checker = CocycleChecker(alphas)
        for _ in range(10):
            w = random_nonzero_vector(rng, n)
            assert checker.alternating_sum(w) == checker.tau


def test_tau_gl_equivariance():
    rng = random.Random(67)
    for _ in range(20):
        n = rng.randint(2, 3)
        alphas = [random_invertible(rng, n) for _ in range(n + 1)]
        beta = random_invertible(rng, n)
        moved = [mat_mul(beta, a) for a in alphas]
        assert tau_cocycle(moved) == sign(mat_det(beta)) * tau_cocycle(alphas)


def test_sigma_matches_cone_indicator_on_moment_columns():
    # the prepared evaluator is an optimization of evaluating the signed
    # cone indicator on the perturbed columns; check them against each
    # other on random instances
    rng = random.Random(97)
    for _ in range(15):
        n = rng.randint(1, 3)
        alphas = [random_invertible(rng, n) for _ in range(n)]
        cols = []
        for i, a in enumerate(alphas):
            b = moment_vector(i, n, n)
            col = []
            for row in range(n):
                acc = MPoly.zero(n)
                for k in range(n):
                    acc = acc + b[k] * a[row][k]
                col.append(acc)
            cols.append(col)
        for _ in range(8):
            w = random_nonzero_vector(rng, n)
            wcol = [MPoly.const(n, x) for x in w]
            assert sigma_eval(alphas, w) == cvalue(cols, wcol)


def test_tau_matches_dvalue_on_moment_columns():
    rng = random.Random(101)
    for _ in range(10):
        n = rng.randint(2, 3)
        alphas = [random_invertible(rng, n) for _ in range(n + 1)]
        cols = []
        for i, a in enumerate(alphas):
            b = moment_vector(i, n, n + 1)
            col = []
            for row in range(n):
                acc = MPoly.zero(n + 1)
                for k in range(n):
                    acc = acc + b[k] * a[row][k]
                col.append(acc)
            cols.append(col)
        assert tau_cocycle(alphas) == dvalue(cols)


def test_sigma_gl_equivariance():
    rng = random.Random(71)
    for _ in range(25):
        n = rng.randint(2, 3)
        alphas = [random_invertible(rng, n) for _ in range(n)]
        beta = random_invertible(rng, n)
        w = random_nonzero_vector(rng, n)
        lhs = sigma_eval([mat_mul(beta, a) for a in alphas], w)
        rhs = sign(mat_det(beta)) * sigma_eval(alphas, mat_vec(mat_inv(beta), w))
        assert lhs == rhs


# ---------------------------------------------------------------------------
# Dimension 2: reference cocycle, half-ray coboundary, closed forms
# ---------------------------------------------------------------------------

def test_solomon_s_examples():
    rot = ((0, -1), (1, 0))
    assert solomon_s(I2, rot, (1, 1)) == 1
    assert solomon_s(I2, rot, (1, 0)) == Fraction(1, 2)
    assert solomon_s(I2, I2, (1, 1)) == 0


def test_coboundary_tau_half_examples():
    assert coboundary_tau_half((3, 0)) == Fraction(1, 2)
    assert coboundary_tau_half((-3, 0)) == 0
    assert coboundary_tau_half((0, 1)) == 0
    with pytest.raises(ZeroVector):
        coboundary_tau_half((0, 0))


def _solomon_gap(a, b, w, orientation):
    lhs = Fraction(sigma_eval([a, b], w)) - solomon_s(a, b, w)
    rhs = tau_transport(a, w) - tau_transport(b, w)
    return lhs - orientation * rhs


def _first_columns_independent(a, b):
    return a[0][0] * b[1][0] - a[1][0] * b[0][0] != 0


def test_solomon_comparison_constant_with_derived_orientation():
    # (sigma - s)(a, b) differs from b*tau - a*tau by a constant function
    # whenever the two first columns are independent; derived directly from
    # the definitions (homogeneous coboundary of the half-ray function).
    rng = random.Random(73)
    done = 0
    while done < 30:
        a = random_invertible(rng, 2)
        b = random_invertible(rng, 2)
        if not _first_columns_independent(a, b):
            continue
        done += 1
        vals = set()
        ws = [random_nonzero_vector(rng, 2) for _ in range(25)]
        ws += [(1, 0), (-1, 0), (0, 1), (0, -1),
               (a[0][0], a[1][0]), (b[0][0], b[1][0])]
        for w in ws:
            if any(x != 0 for x in w):
                vals.add(_solomon_gap(a, b, w, -1))
        assert len(vals) == 1


def test_solomon_comparison_opposite_orientation_not_constant():
    # with the opposite transport orientation the difference genuinely
    # depends on w, so the derived orientation above is forced
    rot = ((0, -1), (1, 0))
    vals = {_solomon_gap(I2, rot, w, +1) for w in [(1, 1), (1, 0), (0, 1), (-1, 0)]}
    assert len(vals) > 1


def test_solomon_comparison_parallel_columns_only_mod_kernel():
    # when the first columns are parallel the reference cocycle is set to 0
    # and no constant shift can reconcile the two sides: the relation only
    # survives modulo functions the pairing kills, so pairs like this stay
    # out of the constancy suite
    a, b = I2, ((-1, 0), (0, -1))
    vals = {_solomon_gap(a, b, w, -1) for w in [(1, 1), (1, 0), (-1, 0), (0, -1)]}
    assert len(vals) > 1


def _random_case_ii_matrix(rng, sa, sc):
    # lower-left nonzero with prescribed signs of the factorization data
    while True:
        a = Fraction(rng.randint(1, 6), rng.randint(1, 3)) * sa
        c = Fraction(rng.randint(1, 6), rng.randint(1, 3)) * sc
        b = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        d = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        alpha = ((b, a + b * d), (c, c * d))
        if mat_det(alpha) != 0:
            return alpha


def test_closed_form_triangular_cases():
    rng = random.Random(79)
    for sa in (1, -1):
        for sc in (1, -1):
            for _ in range(30):
                a = Fraction(rng.randint(1, 6), rng.randint(1, 3)) * sa
                c = Fraction(rng.randint(1, 6), rng.randint(1, 3)) * sc
                b = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                alpha = ((a, b), (0, c))
                for _ in range(10):
                    w = random_nonzero_vector(rng, 2)
                    assert closed_form_sigma_n2(alpha, w) == sigma_eval([I2, alpha], w)
                for w in [(1, 0), (-1, 0), (0, 1), (0, -1)]:
                    assert closed_form_sigma_n2(alpha, w) == sigma_eval([I2, alpha], w)


def test_closed_form_swap_cases():
    rng = random.Random(83)
    for sa in (1, -1):
        for sc in (1, -1):
            for _ in range(30):
                alpha = _random_case_ii_matrix(rng, sa, sc)
                b, c = alpha[0][0], alpha[1][0]
                boundary = [(1, 0), (-1, 0), (b, c), (-b, -c)]
                ws = [random_nonzero_vector(rng, 2) for _ in range(10)]
                for w in ws + boundary:
                    if any(Fraction(x) != 0 for x in w):
                        assert closed_form_sigma_n2(alpha, w) == sigma_eval([I2, alpha], w)


def test_closed_form_identity_is_zero():
    for w in [(1, 0), (0, 1), (-2, 3), (5, 5)]:
        assert closed_form_sigma_n2(I2, w) == 0
