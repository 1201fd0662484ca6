"""Unit and property tests for the multiplicity routes."""

import warnings
from fractions import Fraction

import pytest

from conftest import (
    curve_with_known_multiplicity,
    matrix_with_rational_spectrum,
    random_invertible,
    random_rank_one_projection,
)
from curveinv import _linalg, fixtures
from curveinv.exactnum import Jet, SingularToKnownOrder, vanishing_order
from curveinv.multiplicity import (
    InvalidProjectionPair,
    MatrixCurveJet,
    NotTransversal,
    PhiNotNormalized,
    algebraic_order,
    classical_multiplicity,
    is_kappa_transversal,
    local_determinant,
    multiplicity_det,
    multiplicity_laurent,
    multiplicity_schur,
    multiplicity_transversal,
    nested_kernels,
    pointwise_product,
    projection_pair,
    schur_operator,
    shifted_eigen_curve,
    validate_projection_pair,
    verify_transversalization,
)

F = Fraction
I2 = _linalg.identity(2)


def mat(rows):
    return _linalg.freeze(rows)


def curve(dim, *coeff_rows, base=0):
    return MatrixCurveJet(dim, F(base), tuple(mat(r) for r in coeff_rows))


def diag_curve(*entries, base=0):
    """Curve diag(p_1(mu), ...) given per-entry coefficient lists."""
    n = len(entries)
    top = max(len(e) for e in entries)
    mats = []
    for k in range(top):
        mats.append(
            [
                [
                    (entries[i][k] if k < len(entries[i]) else 0)
                    if i == j
                    else 0
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )
    return curve(n, *mats)


# -- projection pairs ----------------------------------------------------------


def test_projection_pair_invertible():
    pair = projection_pair(mat([[1, 2], [0, 1]]))
    assert pair.p == _linalg.zeros(2, 2)
    assert pair.q == I2
    assert pair.kernel_dim == 0


def test_projection_pair_zero_matrix():
    pair = projection_pair(_linalg.zeros(2, 2))
    assert pair.p == I2
    assert pair.q == _linalg.zeros(2, 2)


def test_projection_pair_nilpotent_block():
    t = mat([[0, 1], [0, 0]])
    pair = projection_pair(t)
    e1 = (F(1), F(0))
    # kernel and range both span the first axis
    assert pair.kernel_basis == (e1,)
    assert pair.range_basis == (e1,)
    assert _linalg.matmul(pair.p, pair.p) == pair.p
    assert _linalg.matmul(pair.q, pair.q) == pair.q
    validate_projection_pair(t, pair)


def test_validate_rejects_wrong_pair():
    t = mat([[0, 1], [0, 0]])
    good = projection_pair(t)
    with pytest.raises(InvalidProjectionPair):
        validate_projection_pair(I2, good)


def test_schur_rejects_pair_for_other_matrix():
    foreign = projection_pair(mat([[0, 0], [0, 1]]))
    with pytest.raises(InvalidProjectionPair):
        schur_operator(fixtures.nilpotent_shift_curve(), pair=foreign)


# -- schur operator and local determinant ---------------------------------------


def test_schur_scalar_curve():
    c = MatrixCurveJet(1, F(0), (mat([[0]]), mat([[1]])))
    s = schur_operator(c)
    assert s.dim == 1
    assert s.entry(0, 0).coeffs[:2] == (F(0), F(1))


def test_schur_np_curve_has_order_one():
    s = schur_operator(fixtures.normalization_curve())
    o = vanishing_order(s.entry(0, 0))
    assert o.is_finite and o.value == 1


def test_schur_jordan_curve_local_determinant_order_two():
    d = local_determinant(fixtures.nilpotent_shift_curve())
    o = vanishing_order(d)
    assert o.is_finite and o.value == 2


def test_local_determinant_invertible_base_is_unit():
    c = curve(2, [[1, 0], [0, 1]], [[1, 1], [1, 1]])
    d = local_determinant(c)
    assert d.coeffs[0] == 1


def test_local_determinant_diag_order_three():
    c = diag_curve([0, 1], [0, 0, 1])
    o = vanishing_order(local_determinant(c))
    assert o.is_finite and o.value == 3


# -- determinant route -----------------------------------------------------------


def test_det_route_jordan():
    assert multiplicity_det(fixtures.nilpotent_shift_curve()).value == 2


def test_det_route_np_curve():
    assert multiplicity_det(fixtures.normalization_curve()).value == 1


def test_det_route_invertible_is_zero(rng):
    c = MatrixCurveJet(3, F(0), (random_invertible(rng, 3), random_invertible(rng, 3)))
    assert multiplicity_det(c).value == 0


def test_det_route_zero_curve_is_infinite():
    r = multiplicity_det(fixtures.zero_curve())
    assert r.kind == "infinite"


def test_det_route_capped_order_reports_undetermined():
    c = diag_curve([0, 1], [0, 0, 1])  # determinant order 3
    r = multiplicity_det(c, order=2)
    assert r.kind == "undetermined" and r.order_bound == 2


# -- schur route ------------------------------------------------------------------


def test_schur_route_examples():
    assert multiplicity_schur(fixtures.nilpotent_shift_curve()).value == 2
    assert multiplicity_schur(fixtures.normalization_curve()).value == 1
    assert multiplicity_schur(diag_curve([0, 1], [0, 0, 1], [1])).value == 3


def test_schur_route_matches_det_route_on_diag():
    c = diag_curve([0, 1], [0, 0, 1], [1])
    assert multiplicity_schur(c).value == multiplicity_det(c).value


# -- laurent route ------------------------------------------------------------------


def test_laurent_route_examples():
    assert multiplicity_laurent(fixtures.normalization_curve()).value == 1
    assert multiplicity_laurent(fixtures.nilpotent_shift_curve()).value == 2
    assert multiplicity_laurent(diag_curve([0, 1], [1])).value == 1


def test_laurent_route_rejects_zero_determinant():
    with pytest.raises(SingularToKnownOrder):
        multiplicity_laurent(fixtures.zero_curve())


# -- nested kernels and transversality -------------------------------------------


def test_nested_kernels_invertible():
    c = curve(2, [[1, 0], [0, 1]], [[0, 0], [0, 0]])
    (k1,) = nested_kernels(c, 1)
    assert k1 == ()


def test_nested_kernels_zero_then_identity():
    c = curve(2, [[0, 0], [0, 0]], [[1, 0], [0, 1]])
    k1, k2 = nested_kernels(c, 2)
    assert len(k1) == 2
    assert k2 == ()


def test_nested_kernels_mixed():
    c = curve(2, [[0, 1], [0, 0]], [[1, 0], [0, 0]])
    k1, k2 = nested_kernels(c, 2)
    assert k1 == ((F(1), F(0)),)
    assert k2 == ()


def test_transversal_np_curve_at_one():
    cert = is_kappa_transversal(fixtures.normalization_curve(), 1)
    assert cert.holds and cert.image_dims == (1,)


def test_transversal_crandall_rabinowitz_setup():
    # one-dimensional kernel, first derivative leaves the range
    c = curve(2, [[0, 0], [0, 1]], [[1, 0], [0, 0]])
    cert = is_kappa_transversal(c, 1)
    assert cert.holds
    assert multiplicity_transversal(c).value == 1


def test_transversal_fails_with_zero_derivative():
    c = curve(2, [[0, 1], [0, 0]], [[0, 0], [0, 0]])
    cert = is_kappa_transversal(c, 1)
    assert not cert.holds


def test_transversal_route_examples():
    assert multiplicity_transversal(fixtures.normalization_curve()).value == 1
    c = curve(2, [[0, 0], [0, 0]], [[1, 0], [0, 1]])
    assert multiplicity_transversal(c).value == 2


def test_transversal_route_raises_when_not_transversal():
    c = curve(2, [[0, 1], [0, 0]], [[0, 0], [0, 0]])
    with pytest.raises(NotTransversal):
        multiplicity_transversal(c)


# -- transversalization -----------------------------------------------------------


def test_verify_transversalization_identity_phi():
    c = fixtures.normalization_curve()
    phi = MatrixCurveJet(2, F(0), (I2, _linalg.zeros(2, 2)))
    assert verify_transversalization(c, phi).value == 1


def test_verify_transversalization_random_phi(rng):
    for _ in range(10):
        c, expected = curve_with_known_multiplicity(rng, n=rng.randint(1, 3),
                                                    max_degree=4)
        n = c.dim
        phi = MatrixCurveJet(
            n,
            c.base_point,
            (_linalg.identity(n),) + tuple(
                _linalg.freeze(
                    [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
                )
                for _ in range(rng.randint(1, 2))
            ),
        )
        try:
            report = verify_transversalization(c, phi)
        except NotTransversal:
            continue
        assert report.value == expected


def test_verify_transversalization_nilpotent_phi():
    c = fixtures.normalization_curve()
    nilp = mat([[0, 1], [0, 0]])
    phi = MatrixCurveJet(2, F(0), (I2, nilp))
    assert verify_transversalization(c, phi).value == 1


def test_transversalizing_composition_fixes_jordan_curve():
    # lam*I - J is not transversal on its own; composing with I + lam*N for
    # the transposed nilpotent makes the base point 2-transversal while the
    # multiplicity stays 2
    c = fixtures.nilpotent_shift_curve()
    with pytest.raises(NotTransversal):
        multiplicity_transversal(c)
    phi = MatrixCurveJet(2, F(0), (I2, mat([[0, 0], [1, 0]])))
    report = verify_transversalization(c, phi)
    assert report.value == 2


def test_verify_transversalization_rejects_unnormalized_phi():
    c = fixtures.normalization_curve()
    phi = MatrixCurveJet(2, F(0), (mat([[2, 0], [0, 1]]), I2))
    with pytest.raises(PhiNotNormalized):
        verify_transversalization(c, phi)


# -- algebraic order ---------------------------------------------------------------


def test_algebraic_order_diag():
    assert algebraic_order(diag_curve([0, 1], [0, 0, 1])).kappa == 2
    assert algebraic_order(diag_curve([0, 1], [1])).kappa == 1


def test_algebraic_order_jordan():
    assert algebraic_order(fixtures.nilpotent_shift_curve()).kappa == 2


def test_algebraic_order_regular_point():
    c = curve(2, [[1, 0], [0, 1]], [[1, 1], [1, 1]])
    rep = algebraic_order(c)
    assert rep.kappa is None and rep.determinant_order == 0


def test_algebraic_order_zero_curve_raises():
    with pytest.raises(SingularToKnownOrder):
        algebraic_order(fixtures.zero_curve())


# -- classical multiplicity ----------------------------------------------------------


def test_classical_jordan_block():
    rep = classical_multiplicity(mat([[0, 1], [0, 0]]), 0)
    assert rep.ascent == 2 and rep.multiplicity == 2


def test_classical_diagonal():
    k = mat([[5, 0, 0], [0, 5, 0], [0, 0, 7]])
    rep = classical_multiplicity(k, 5)
    assert rep.ascent == 1 and rep.multiplicity == 2


def test_classical_companion_matrix():
    # companion matrix of (x - 1)^2 (x - 2) = x^3 - 4x^2 + 5x - 2
    k = mat([[0, 0, 2], [1, 0, -5], [0, 1, 4]])
    rep = classical_multiplicity(k, 1)
    assert rep.ascent == 2 and rep.multiplicity == 2


def test_classical_regular_value():
    rep = classical_multiplicity(mat([[0, 1], [0, 0]]), 3)
    assert rep.ascent == 1 and rep.multiplicity == 0


# -- cross-route properties ------------------------------------------------------------


def test_route_equivalence_on_random_curves(rng):
    for _ in range(40):
        c, expected = curve_with_known_multiplicity(rng, max_degree=6)
        det_r = multiplicity_det(c)
        assert det_r.value == expected
        assert multiplicity_schur(c).value == expected
        assert multiplicity_laurent(c).value == expected
        try:
            assert multiplicity_transversal(c).value == expected
        except NotTransversal:
            pass


def test_projection_pair_independence(rng):
    for _ in range(20):
        c, expected = curve_with_known_multiplicity(rng, n=rng.randint(1, 4),
                                                    max_degree=5)
        t = c.constant_term()
        left = projection_pair(t, flavor="leftmost")
        right = projection_pair(t, flavor="rightmost")
        assert multiplicity_schur(c, pair=left).value == expected
        assert multiplicity_schur(c, pair=right).value == expected
        assert multiplicity_laurent(c, pair=right).value == expected


def test_product_formula(rng):
    for _ in range(25):
        n = rng.randint(1, 4)
        a, va = curve_with_known_multiplicity(rng, n=n, max_degree=4)
        b, vb = curve_with_known_multiplicity(rng, n=n, max_degree=4)
        b = MatrixCurveJet(n, a.base_point, b.coefficients)
        prod = pointwise_product(a, b)
        assert multiplicity_det(prod).value == va + vb


def test_normalization_over_random_rank_one_projections(rng):
    for _ in range(20):
        n = rng.randint(2, 4)
        proj = random_rank_one_projection(rng, n)
        ident = _linalg.identity(n)
        c = MatrixCurveJet(n, F(0), (_linalg.msub(ident, proj), proj))
        assert multiplicity_det(c).value == 1
        assert multiplicity_schur(c).value == 1
        assert multiplicity_transversal(c).value == 1


def test_zero_iff_invertible(rng):
    for _ in range(20):
        n = rng.randint(1, 4)
        c, expected = curve_with_known_multiplicity(rng, n=n, max_degree=4)
        r = multiplicity_det(c)
        invertible = _linalg.det(c.constant_term()) != 0
        assert (r.value == 0) == invertible
        # finite multiplicity iff a finite blow-up order exists
        rep = algebraic_order(c)
        assert r.is_finite
        assert rep.is_algebraic == (r.value > 0)


def test_classical_equals_curve_route(rng):
    for _ in range(15):
        n = rng.randint(2, 4)
        k, eigs = matrix_with_rational_spectrum(rng, n)
        mu = rng.choice(eigs)
        rep = classical_multiplicity(k, mu)
        det_rep = multiplicity_det(shifted_eigen_curve(k, mu))
        assert det_rep.value == rep.multiplicity


def test_determinant_order_against_sympy_oracle(rng):
    # independent symbolic oracle for the determinant route
    import sympy

    mu = sympy.Symbol("mu")
    for _ in range(12):
        c, expected = curve_with_known_multiplicity(rng, n=rng.randint(1, 4),
                                                    max_degree=5)
        m = sympy.zeros(c.dim, c.dim)
        for k, mat_k in enumerate(c.coefficients):
            for i in range(c.dim):
                for j in range(c.dim):
                    q = mat_k[i][j]
                    m[i, j] += sympy.Rational(q.numerator, q.denominator) * mu**k
        det = sympy.Poly(m.det(method="berkowitz"), mu)
        low = min(sum(mon) for mon in det.monoms())
        assert multiplicity_det(c).value == low == expected


def test_classical_against_sympy_charpoly_oracle(rng):
    import sympy

    for _ in range(10):
        n = rng.randint(2, 4)
        k, eigs = matrix_with_rational_spectrum(rng, n)
        mu = rng.choice(eigs)
        m = sympy.Matrix(
            [[sympy.Rational(c.numerator, c.denominator) for c in row] for row in k]
        )
        lam = sympy.Symbol("lam")
        charpoly = sympy.Poly(m.charpoly(lam).as_expr(), lam)
        mu_s = sympy.Rational(mu.numerator, mu.denominator)
        mult = 0
        p = charpoly
        while p.eval(mu_s) == 0:
            p = sympy.Poly(sympy.quo(p.as_expr(), lam - mu_s), lam)
            mult += 1
        assert classical_multiplicity(k, mu).multiplicity == mult


def test_kappa_bounded_by_multiplicity_logged(rng):
    violations = []
    for _ in range(25):
        c, expected = curve_with_known_multiplicity(rng, max_degree=5)
        rep = algebraic_order(c)
        if rep.is_algebraic and rep.kappa > expected:
            violations.append((rep.kappa, expected))
    if violations:
        # observed relation, not asserted
        warnings.warn(f"kappa exceeded multiplicity on {violations}")
