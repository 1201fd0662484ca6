"""Unit and property tests for path and loop parity."""

from fractions import Fraction

import pytest

from conftest import curve_with_known_multiplicity, random_admissible_path
from curveinv import _linalg, fixtures
from curveinv.exactnum import SingularToKnownOrder
from curveinv.multiplicity import MatrixCurveJet, pointwise_product
from curveinv.parity import (
    AnalyticSegment,
    GlConnector,
    LoopPath,
    NonTransversalCrossing,
    NotAdmissible,
    PolynomialPath,
    crossing_parity,
    interval_parity,
    local_parity,
    loop_parity,
    multiplicity_sum_parity,
)

F = Fraction


def diag_path(entries, a=-1, b=1):
    """Path diag(p_1(lam), ...) from per-entry coefficient lists."""
    n = len(entries)
    top = max(len(e) for e in entries)
    mats = []
    for k in range(top):
        mats.append(
            tuple(
                tuple(
                    F(entries[i][k]) if (i == j and k < len(entries[i])) else F(0)
                    for j in range(n)
                )
                for i in range(n)
            )
        )
    return PolynomialPath(n, F(a), F(b), tuple(mats))


# -- interval parity -----------------------------------------------------------


def test_interval_parity_single_crossing():
    assert interval_parity(fixtures.crossing_path()).sign == -1


def test_interval_parity_constant_invertible():
    assert interval_parity(fixtures.constant_invertible_path()).sign == 1


def test_interval_parity_two_crossings():
    path = diag_path([[0, 1], [0, 1]])  # diag(lam, lam)
    assert interval_parity(path).sign == 1


def test_interval_parity_rejects_singular_endpoint():
    path = diag_path([[1, -1], [1]])  # diag(1 - lam, 1), singular at lam = 1
    with pytest.raises(NotAdmissible):
        interval_parity(path)


def test_interval_parity_depends_only_on_endpoints():
    # same endpoint matrices, different interiors
    base = fixtures.crossing_path()
    bumped = diag_path([[0, 0, 0, 1], [1]])  # diag(lam^3, 1)
    assert base.evaluate(-1) == bumped.evaluate(-1)
    assert base.evaluate(1) == bumped.evaluate(1)
    assert interval_parity(base).sign == interval_parity(bumped).sign


# -- crossing parity -------------------------------------------------------------


def test_crossing_parity_isolates_origin():
    value = crossing_parity(fixtures.crossing_path())
    assert value.sign == -1
    assert len(value.crossings) == 1
    loc = value.crossings[0].location
    assert loc.exact == 0


def test_crossing_parity_invertible_path():
    value = crossing_parity(fixtures.constant_invertible_path())
    assert value.sign == 1 and value.crossings == ()


def test_crossing_parity_two_symmetric_roots():
    path = diag_path([[F(-1, 4), 0, 1], [1]])  # diag(lam^2 - 1/4, 1)
    value = crossing_parity(path)
    assert value.sign == 1
    assert [c.location.exact for c in value.crossings] == [F(-1, 2), F(1, 2)]


def test_crossing_parity_rejects_double_root():
    path = diag_path([[0, 0, 1], [1]])  # diag(lam^2, 1)
    with pytest.raises(NonTransversalCrossing):
        crossing_parity(path)


def test_crossing_parity_irrational_roots_isolated():
    path = diag_path([[-2, 0, 1], [1]], a=-2, b=2)  # roots +-sqrt(2)
    value = crossing_parity(path)
    assert value.sign == 1
    assert len(value.crossings) == 2
    for c in value.crossings:
        assert c.location.exact is None
        assert abs(abs(c.location.as_float()) - 2 ** 0.5) < 1e-3


# -- multiplicity-sum parity -------------------------------------------------------


def test_chi_sum_parity_simple_root():
    value = multiplicity_sum_parity(fixtures.crossing_path())
    assert value.sign == -1
    assert [(c.location.exact, c.multiplicity) for c in value.crossings] == [(0, 1)]


def test_chi_sum_parity_double_root():
    path = diag_path([[0, 0, 1], [1]])
    value = multiplicity_sum_parity(path)
    assert value.sign == 1
    assert [(c.location.exact, c.multiplicity) for c in value.crossings] == [(0, 2)]


def test_chi_sum_matches_crossings_on_two_simple_roots():
    path = diag_path([[F(-1, 4), 0, 1], [1]])
    assert multiplicity_sum_parity(path).sign == crossing_parity(path).sign


# -- localized parity ----------------------------------------------------------------


def test_local_parity_np_curve():
    assert local_parity(fixtures.normalization_curve()).sign == -1


def test_local_parity_multiplicity_two():
    assert local_parity(fixtures.nilpotent_shift_curve()).sign == 1


def test_local_parity_invertible_point():
    c = MatrixCurveJet(2, F(0), (_linalg.identity(2), _linalg.zeros(2, 2)))
    assert local_parity(c).sign == 1


def test_local_parity_rejects_zero_curve():
    with pytest.raises(SingularToKnownOrder):
        local_parity(fixtures.zero_curve())


def test_local_parity_multiplicative(rng):
    for _ in range(15):
        n = rng.randint(1, 4)
        a, _ = curve_with_known_multiplicity(rng, n=n, max_degree=4)
        b, _ = curve_with_known_multiplicity(rng, n=n, max_degree=4)
        b = MatrixCurveJet(n, a.base_point, b.coefficients)
        prod = pointwise_product(a, b)
        assert (
            local_parity(prod).sign
            == local_parity(a).sign * local_parity(b).sign
        )


# -- loops -------------------------------------------------------------------------


def test_loop_parity_twisted():
    value = loop_parity(fixtures.twisted_loop())
    assert value.sign == -1
    assert value.from_connector_abstraction


def test_loop_parity_constant():
    value = loop_parity(fixtures.constant_loop())
    assert value.sign == 1
    assert value.from_connector_abstraction


def test_loop_parity_forward_backward():
    value = loop_parity(fixtures.forward_backward_loop())
    assert value.sign == 1
    assert not value.from_connector_abstraction
    assert sum(c.multiplicity for c in value.crossings) == 2


def test_loop_all_connectors_is_trivial():
    value = loop_parity(LoopPath((GlConnector(), GlConnector())))
    assert value.sign == 1 and value.from_connector_abstraction


def test_single_segment_loop_must_close():
    with pytest.raises(ValueError):
        LoopPath((AnalyticSegment(fixtures.crossing_path()),))


def test_single_segment_closed_loop():
    # diag(lam^2, 1) has equal endpoint matrices on [-1, 1]
    path = diag_path([[0, 0, 1], [1]])
    value = loop_parity(LoopPath((AnalyticSegment(path),)))
    assert value.sign == 1
    assert [(c.location.exact, c.multiplicity) for c in value.crossings] == [(0, 2)]


def test_loop_rejects_mismatched_segments():
    p1 = fixtures.crossing_path()
    p2 = fixtures.constant_invertible_path()
    with pytest.raises(ValueError):
        LoopPath((AnalyticSegment(p1), AnalyticSegment(p2)))


def test_loop_rejects_inadmissible_segment():
    path = diag_path([[0, 1], [1]], a=0, b=1)  # singular at the left endpoint
    with pytest.raises(NotAdmissible):
        LoopPath((AnalyticSegment(path), GlConnector()))


# -- cross-route properties -----------------------------------------------------------


def test_three_routes_agree_on_random_paths(rng):
    checked = 0
    while checked < 60:
        path = random_admissible_path(rng)
        iv = interval_parity(path)
        cs = multiplicity_sum_parity(path)
        assert iv.sign == cs.sign
        try:
            cr = crossing_parity(path)
        except NonTransversalCrossing:
            continue
        assert cr.sign == iv.sign
        checked += 1


def test_concatenation_at_invertible_point(rng):
    done = 0
    while done < 20:
        path = random_admissible_path(rng)
        mid = (path.a + path.b) / 2
        if _linalg.det(path.evaluate(mid)) == 0:
            continue
        left = PolynomialPath(path.dim, path.a, mid, path.coefficients)
        right = PolynomialPath(path.dim, mid, path.b, path.coefficients)
        assert (
            interval_parity(path).sign
            == interval_parity(left).sign * interval_parity(right).sign
        )
        assert (
            multiplicity_sum_parity(path).sign
            == multiplicity_sum_parity(left).sign
            * multiplicity_sum_parity(right).sign
        )
        done += 1


def test_reversed_path_has_same_parity(rng):
    for _ in range(10):
        path = random_admissible_path(rng, max_dim=3, max_degree=4)
        rev = path.reversed()
        assert interval_parity(rev).sign == interval_parity(path).sign
        assert multiplicity_sum_parity(rev).sign == multiplicity_sum_parity(path).sign


def test_root_machinery_against_sympy_oracle(rng):
    # independent check of the Sturm counts and the square-free multiplicity
    # bookkeeping that the crossing/chi-sum parities are built on
    import sympy

    from curveinv import _poly

    x = sympy.Symbol("x")
    checked = 0
    while checked < 30:
        deg = rng.randint(1, 7)
        p = _poly.poly(
            F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(deg + 1)
        )
        if rng.random() < 0.5 and not _poly.is_zero(p):
            p = _poly.mul(p, p)  # force repeated roots half the time
        if (
            _poly.is_zero(p)
            or _poly.eval_at(p, F(-1)) == 0
            or _poly.eval_at(p, F(1)) == 0
        ):
            continue
        sp = sympy.Poly(
            sum(
                sympy.Rational(c.numerator, c.denominator) * x**i
                for i, c in enumerate(p)
            ),
            x,
        )
        roots = [r for r in sp.real_roots() if sympy.Rational(-1) < r < 1]
        distinct = len(set(roots))
        with_mult = len(roots)

        g = _poly.gcd(p, _poly.derivative(p))
        squarefree = _poly.div_exact(p, g) if _poly.degree(g) > 0 else p
        assert _poly.count_roots_open(squarefree, F(-1), F(1)) == distinct
        assert len(_poly.isolate_roots(_poly.monic(squarefree), F(-1), F(1))) == distinct

        _, factors = _poly.squarefree_decomposition(p)
        total = sum(
            mult * len(_poly.isolate_roots(f, F(-1), F(1))) for f, mult in factors
        )
        assert total == with_mult
        checked += 1
