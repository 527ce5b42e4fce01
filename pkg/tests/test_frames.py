import numpy as np
import pytest

from app.exceptions import DegenerateSpeedError, InvalidInputError
from app.models.frame import Frame, FrameField, orthonormality_defect
from app.models.rod import DiscreteRod
from app.models.spline import TwistFunction
from app.services import curves
from app.services.frames import BishopFrames, twist_rotation
from app.services.harness import ConvergenceHarness
from app.services.rod_geometry import RodGeometry
from app.services.spline_builder import SplineBuilder

E_Z = np.array([0.0, 0.0, 1.0])


def _planar_initial(tangent):
    b1 = tangent / np.linalg.norm(tangent)
    return Frame.from_vectors(b1, np.cross(E_Z, b1), E_Z)


def _identity_field(n=5, L=1.0):
    return FrameField(np.linspace(0.0, L, n), np.repeat(np.eye(3)[None], n, axis=0))


def test_parallel_transport_on_collinear_rod():
    rod = DiscreteRod([(i, 0, 0) for i in range(6)])
    initial = Frame.identity()
    for frame in BishopFrames.discrete_parallel_transport(rod, initial):
        np.testing.assert_allclose(frame.matrix, initial.matrix)


def test_parallel_transport_keeps_plane_normal(rng):
    xy = np.cumsum(rng.uniform(0.2, 1.0, size=(12, 2)) * rng.choice([-1, 1], size=(12, 2)), axis=0)
    points = np.column_stack([xy, np.zeros(12)])
    rod = DiscreteRod(points)
    units = RodGeometry.unit_edges(rod)
    frames = BishopFrames.discrete_parallel_transport(rod, _planar_initial(units[0]))
    for frame, unit in zip(frames, units):
        np.testing.assert_allclose(frame.b3, E_Z, atol=1e-12)
        np.testing.assert_allclose(frame.b1, unit, atol=1e-12)


def test_parallel_transport_quarter_turn():
    rod = DiscreteRod([(0, 0, 0), (1, 0, 0), (1, 1, 0)])
    frames = BishopFrames.discrete_parallel_transport(rod, Frame.identity())
    quarter = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    np.testing.assert_allclose(frames[1].matrix, quarter, atol=1e-15)


def test_parallel_transport_needs_aligned_start():
    rod = DiscreteRod([(0, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(InvalidInputError):
        BishopFrames.discrete_parallel_transport(rod, Frame.identity())


def test_bishop_field_on_straight_spline_is_constant():
    spline = SplineBuilder.build_spline(DiscreteRod([(i, 0, 0) for i in range(5)]), 4.0)
    field = BishopFrames.integrate_bishop(spline)
    np.testing.assert_allclose(field.matrices, np.repeat(field.matrices[:1], len(field), axis=0), atol=1e-15)


def test_bishop_field_on_planar_arc(discretizer):
    arc = curves.make_arc(1.0, np.pi)
    framed = discretizer.recovery_rod(arc, curves.make_zero_twist(np.pi), 16)
    spline = SplineBuilder.build_spline(framed.rod, np.pi)
    initial = _planar_initial(spline.deriv1(0.0))
    field = BishopFrames.integrate_bishop(spline, initial)
    b1 = field.matrices[:, :, 0]
    np.testing.assert_allclose(field.matrices[:, :, 2], np.repeat(E_Z[None], len(field), axis=0), atol=1e-12)
    np.testing.assert_allclose(field.matrices[:, :, 1], np.cross(E_Z, b1), atol=1e-12)
    # first and last chords of the half circle are pi - pi/16 apart
    assert np.dot(b1[0], b1[-1]) == pytest.approx(-np.cos(np.pi / 16), abs=1e-9)


def test_spacing_spline_frames_rotate_about_plane_normal():
    spline = SplineBuilder.build_spline(ConvergenceHarness.spacing_rod(6).rod, 3.0)
    field = BishopFrames.integrate_bishop(spline, _planar_initial(spline.deriv1(0.0)))
    window = (field.ts >= 1.5) & (field.ts <= 2.5)
    np.testing.assert_allclose(field.matrices[window, :, 2], np.repeat(E_Z[None], window.sum(), axis=0), atol=1e-12)


def test_frames_are_rotations_aligned_with_tangent(discretizer):
    helix = curves.make_helix(1.0, 1.0, 4.0)
    framed = discretizer.recovery_rod(helix, curves.make_sine_twist(4.0), 32)
    spline = SplineBuilder.build_spline(framed.rod, 4.0)
    field = BishopFrames.integrate_bishop(spline)
    assert field.max_orthonormality_defect() <= 1e-9
    assert np.all(np.linalg.det(field.matrices) > 0)
    tangents = spline.deriv1(field.ts)
    tangents /= np.linalg.norm(tangents, axis=1)[:, None]
    np.testing.assert_allclose(field.matrices[:, :, 0], tangents, atol=1e-7)
    material = BishopFrames.apply_twist(field, SplineBuilder.build_twist(framed, 4.0))
    assert np.max(orthonormality_defect(material.matrices)) <= 1e-9


def test_rk4_convergence_order(discretizer):
    helix = curves.make_helix(1.0, 1.0, 4.0)
    framed = discretizer.recovery_rod(helix, curves.make_zero_twist(4.0), 4)
    spline = SplineBuilder.build_spline(framed.rod, 4.0)
    finals = [BishopFrames.integrate_bishop(spline, steps_per_segment=k).matrices[-1] for k in (1, 2, 4)]
    d1 = np.linalg.norm(finals[0] - finals[1])
    d2 = np.linalg.norm(finals[1] - finals[2])
    assert d2 < d1
    assert d1 / d2 > 6.0


def test_discrete_transport_matches_spline_bishop_at_knots(discretizer):
    helix = curves.make_helix(1.0, 1.0, 4.0)
    framed = discretizer.recovery_rod(helix, curves.make_zero_twist(4.0), 32)
    spline = SplineBuilder.build_spline(framed.rod, 4.0)
    discrete = BishopFrames.discrete_parallel_transport(framed.rod)
    steps = 8
    field = BishopFrames.integrate_bishop(spline, discrete[0], steps_per_segment=steps)
    for i in range(1, framed.N + 1):
        np.testing.assert_allclose(field.matrices[i * steps], discrete[i - 1].matrix, atol=1e-7)


def test_degenerate_speed_is_an_error():
    spline = SplineBuilder.build_spline(DiscreteRod([(i, 0, 0) for i in range(4)]), 3.0)
    with pytest.raises(DegenerateSpeedError):
        BishopFrames.integrate_bishop(spline, speed_threshold=2.0)


def test_apply_twist_zero_keeps_field():
    field = _identity_field()
    twisted = BishopFrames.apply_twist(field, TwistFunction([0.5], [0.0], 1.0))
    np.testing.assert_allclose(twisted.matrices, field.matrices)


def test_apply_twist_half_turn():
    twisted = BishopFrames.apply_twist(_identity_field(), TwistFunction([0.5], [np.pi], 1.0))
    for m in twisted.matrices:
        np.testing.assert_allclose(m[:, 0], [1, 0, 0])
        np.testing.assert_allclose(m[:, 1], [0, -1, 0], atol=1e-15)
        np.testing.assert_allclose(m[:, 2], [0, 0, -1], atol=1e-15)


def test_apply_twist_quarter_turn():
    twisted = BishopFrames.apply_twist(_identity_field(), TwistFunction([0.5], [np.pi / 2], 1.0))
    for m in twisted.matrices:
        np.testing.assert_allclose(m[:, 1], [0, 0, 1], atol=1e-15)
        np.testing.assert_allclose(m[:, 2], [0, -1, 0], atol=1e-15)


def test_frame_distance_identities(discretizer):
    helix = curves.make_helix(1.0, 1.0, 4.0)
    framed = discretizer.recovery_rod(helix, curves.make_zero_twist(4.0), 16)
    field = BishopFrames.integrate_bishop(SplineBuilder.build_spline(framed.rod, 4.0))
    assert BishopFrames.frame_distance_mod_rotation(field, field) <= 1e-12
    rotated = FrameField(field.ts, field.matrices @ twist_rotation(1.234))
    assert BishopFrames.frame_distance_mod_rotation(field, rotated) <= 1e-8


def test_frame_distance_detects_differences():
    f = _identity_field()
    tilted = np.array([[np.cos(0.1), -np.sin(0.1), 0], [np.sin(0.1), np.cos(0.1), 0], [0, 0, 1]])
    g = FrameField(f.ts, np.repeat(tilted[None], len(f), axis=0))
    assert BishopFrames.frame_distance_mod_rotation(f, g) > 0.05


def test_frame_distance_needs_common_grid():
    with pytest.raises(InvalidInputError):
        BishopFrames.frame_distance_mod_rotation(_identity_field(5), _identity_field(6))


def test_curve_bishop_field_of_line_is_constant():
    field = BishopFrames.integrate_curve_bishop(curves.make_line(2.0), np.linspace(0.0, 2.0, 5))
    np.testing.assert_allclose(field.matrices, np.repeat(field.matrices[:1], len(field), axis=0))
