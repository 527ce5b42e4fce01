import numpy as np
import pytest

from app.exceptions import DomainError, InvalidInputError
from app.models.rod import DiscreteRod, FramedDiscreteRod
from app.services import curves
from app.services.harness import ConvergenceHarness
from app.services.rod_geometry import RodGeometry
from app.services.spline_builder import SplineBuilder
from tests.conftest import random_rod

SQUARE_ON_CIRCLE = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0), (1, 0, 0)]


def _hermite_solve(p0, p1, m0, m1, T):
    """Coefficients (A, B, C, D) per coordinate from values and slopes at 0 and T"""
    system = np.array(
        [
            [0.0, 0.0, 0.0, 1.0],
            [T**3, T**2, T, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [3 * T**2, 2 * T, 1.0, 0.0],
        ]
    )
    return np.linalg.solve(system, np.array([p0, p1, m0, m1]))


def test_fit_cubic_collinear_triple_is_straight():
    seg = SplineBuilder.fit_cubic((0, 0, 0), (1, 0, 0), (2, 0, 0), T=1.0)
    np.testing.assert_allclose(seg.A, 0.0, atol=1e-15)
    np.testing.assert_allclose(seg.B, 0.0, atol=1e-15)


def test_fit_cubic_equal_chords_is_quadratic():
    x_prev, x0, x1 = np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0)], dtype=float)
    seg = SplineBuilder.fit_cubic(x_prev, x0, x1, T=1.0)
    np.testing.assert_allclose(seg.A, 0.0, atol=1e-15)
    np.testing.assert_allclose(seg.B * seg.T**2, (x1 - 2 * x0 + x_prev) / 2)


def test_fit_cubic_matches_hermite_system():
    x_prev, x0, x1 = np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0.5)], dtype=float)
    T, sigmas = 1.3, (0.8, 1.2)
    seg = SplineBuilder.fit_cubic(x_prev, x0, x1, T=T, sigmas=sigmas)
    e0 = (x0 - x_prev) / np.linalg.norm(x0 - x_prev)
    e1 = (x1 - x0) / np.linalg.norm(x1 - x0)
    coeffs = _hermite_solve((x_prev + x0) / 2, (x0 + x1) / 2, sigmas[0] * e0, sigmas[1] * e1, T)
    np.testing.assert_allclose(seg.A, coeffs[0], atol=1e-12)
    np.testing.assert_allclose(seg.B, coeffs[1], atol=1e-12)
    np.testing.assert_allclose(seg.C, coeffs[2], atol=1e-12)
    np.testing.assert_allclose(seg.D, coeffs[3], atol=1e-12)
    np.testing.assert_allclose(seg.eval(T), (x0 + x1) / 2, atol=1e-12)
    np.testing.assert_allclose(seg.deriv1(T), sigmas[1] * e1, atol=1e-12)


def test_fit_cubic_rejects_nonpositive_length():
    with pytest.raises(InvalidInputError):
        SplineBuilder.fit_cubic((0, 0, 0), (1, 0, 0), (2, 0, 0), T=0.0)


def test_spacing_rod_spline_is_fixed_curve():
    rod = ConvergenceHarness.spacing_rod(8).rod
    spline = SplineBuilder.build_spline(rod, 3.0)
    t = np.linspace(1.5, 2.5, 11)
    expected = np.column_stack([t, np.zeros_like(t), np.zeros_like(t)])
    expected += 0.5 * ((t - 1.5) ** 2)[:, None] * np.array([-1.0, 1.0, 0.0])
    np.testing.assert_allclose(spline.eval(t), expected, atol=1e-12)
    np.testing.assert_allclose(spline.eval(2.0), [1.875, 0.125, 0.0], atol=1e-12)
    np.testing.assert_allclose(spline.deriv1(2.0), [0.5, 0.5, 0.0], atol=1e-12)
    assert np.linalg.norm(spline.deriv1(2.0)) == pytest.approx(np.sqrt(2) / 2)


def test_collinear_rod_spline_is_the_line():
    rod = DiscreteRod([(i, 0, 0) for i in range(5)])
    spline = SplineBuilder.build_spline(rod, 4.0)
    t = np.linspace(0.0, 4.0, 33)
    np.testing.assert_allclose(spline.eval(t), np.column_stack([t, 0 * t, 0 * t]), atol=1e-14)
    np.testing.assert_allclose(spline.deriv2(t), 0.0, atol=1e-14)


def test_square_spline_is_piecewise_quadratic():
    rod = DiscreteRod(SQUARE_ON_CIRCLE)
    spline = SplineBuilder.build_spline(rod, 4.0)
    knots = spline.knots
    for seg in spline.segments():
        assert np.linalg.norm(seg.A) <= 1e-12
    for k in range(1, spline.N):
        inner = np.linspace(knots[k], knots[k + 1], 7)[1:-1]
        second = spline.deriv2(inner)
        np.testing.assert_allclose(second, np.repeat(second[:1], len(inner), axis=0), atol=1e-12)
        # finite differences of positions agree with deriv2 inside the segment
        h = 1e-4
        mid = 0.5 * (knots[k] + knots[k + 1])
        fd = (spline.eval(mid + h) - 2 * spline.eval(mid) + spline.eval(mid - h)) / h**2
        np.testing.assert_allclose(fd, spline.deriv2(mid), atol=1e-5)


def test_interpolation_at_interior_knots(rng):
    for _ in range(20):
        rod = random_rod(rng, int(rng.integers(2, 20)))
        L = rng.uniform(0.5, 3.0)
        spline = SplineBuilder.build_spline(rod, L)
        units = RodGeometry.unit_edges(rod)
        x = rod.points
        for i in range(1, rod.N + 1):
            t_i = spline.knots[i]
            np.testing.assert_allclose(spline.eval(t_i), 0.5 * (x[i - 1] + x[i]), atol=1e-12)
            np.testing.assert_allclose(spline.deriv1(t_i), spline.lambda_ * units[i - 1], atol=1e-12)


def test_c1_continuity_at_knots(rng):
    for _ in range(20):
        rod = random_rod(rng, int(rng.integers(3, 20)))
        spline = SplineBuilder.build_spline(rod, 1.0)
        for k in range(1, spline.N + 1):
            left = spline.segment(k - 1)
            right = spline.segment(k)
            np.testing.assert_allclose(left.eval(left.T), right.D, atol=1e-10)
            np.testing.assert_allclose(left.deriv1(left.T), right.C, atol=1e-10)


def test_caps_have_speed_lambda(rng):
    rod = random_rod(rng, 6)
    spline = SplineBuilder.build_spline(rod, 2.0)
    knots = spline.knots
    for t in np.linspace(0.0, knots[1], 5)[:-1].tolist() + np.linspace(knots[-2], 2.0, 5).tolist():
        assert np.linalg.norm(spline.deriv1(t)) == pytest.approx(spline.lambda_, rel=1e-12)


def test_equal_chord_rods_have_quadratic_segments(discretizer):
    framed = discretizer.recovery_rod(curves.make_arc(1.0, np.pi), curves.make_zero_twist(np.pi), 16)
    spline = SplineBuilder.build_spline(framed.rod, np.pi)
    assert max(np.linalg.norm(seg.A) * seg.T for seg in spline.segments()) <= 1e-10


def test_evaluation_outside_domain_raises():
    spline = SplineBuilder.build_spline(DiscreteRod([(0, 0, 0), (1, 0, 0), (2, 0, 0)]), 2.0)
    with pytest.raises(DomainError):
        spline.eval(2.5)
    with pytest.raises(DomainError):
        spline.deriv1(-0.1)


def test_constant_twist():
    rod = DiscreteRod([(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)])
    twist = SplineBuilder.build_twist(FramedDiscreteRod(rod, [0.7, 0.7, 0.7]), 3.0)
    t = np.linspace(0.0, 3.0, 13)
    np.testing.assert_allclose(twist.eval(t), 0.7)
    np.testing.assert_allclose(twist.deriv(t), 0.0)


def test_twist_slope_between_knots():
    r = 0.4
    rod = DiscreteRod([(0, 0, 0), (r, 0, 0), (2 * r, 0, 0)])
    twist = SplineBuilder.build_twist(FramedDiscreteRod(rod, [0.0, 1.0]), 2 * r)
    assert twist.deriv(r) == pytest.approx(1.0 / r)
    assert twist.eval(0.0) == 0.0
    assert twist.eval(2 * r) == 1.0
    assert twist.deriv(0.05) == 0.0


def test_twist_slope_scales_with_lambda():
    rod = DiscreteRod([(0, 0, 0), (1, 0, 0), (2, 0, 0)])
    twist = SplineBuilder.build_twist(FramedDiscreteRod(rod, [0.0, 1.0]), 1.0)
    # lambda = 2, tau gap 1
    assert twist.deriv(0.5) == pytest.approx(2.0)


def test_recovery_twist_is_uniformly_close(discretizer):
    L = 2.0
    for N in (16, 64):
        framed = discretizer.recovery_rod(curves.make_line(L), curves.make_linear_twist(L), N)
        twist = SplineBuilder.build_twist(framed, L)
        t = np.linspace(0.0, L, 4001)
        assert np.max(np.abs(twist.eval(t) - t)) <= L / N


def test_max_speed_deviation_on_spacing_rod():
    spline = SplineBuilder.build_spline(ConvergenceHarness.spacing_rod(5).rod, 3.0)
    deviation = SplineBuilder.max_speed_deviation(spline, 2001)
    assert deviation == pytest.approx(1.0 - np.sqrt(2) / 2, abs=1e-3)
