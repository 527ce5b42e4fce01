"""Bishop frames on polylines, splines and analytic curves"""
import logging
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from app.exceptions import DegenerateSpeedError, InvalidInputError
from app.models.curve import AnalyticCurve
from app.models.frame import Frame, FrameField
from app.models.rod import DiscreteRod
from app.models.spline import SplineCurve, TwistFunction
from app.services.rod_geometry import RodGeometry

logger = logging.getLogger(__name__)

ALIGNMENT_TOLERANCE = 1e-9
PARALLEL_EPS = np.finfo(float).eps


def skew(w) -> np.ndarray:
    """3x3 matrix of v -> w x v"""
    return np.array([[0.0, -w[2], w[1]], [w[2], 0.0, -w[0]], [-w[1], w[0], 0.0]])


def twist_rotation(angle) -> np.ndarray:
    """Rotation about the first axis; shape (3, 3) or (n, 3, 3) for an array of angles"""
    angle = np.asarray(angle, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    out = np.zeros(angle.shape + (3, 3))
    out[..., 0, 0] = 1.0
    out[..., 1, 1] = c
    out[..., 1, 2] = -s
    out[..., 2, 1] = s
    out[..., 2, 2] = c
    return out


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _realign(matrix: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    """Set b1 to the tangent and Gram-Schmidt the remaining columns against it"""
    b1 = tangent
    b2 = matrix[:, 1] - np.dot(matrix[:, 1], b1) * b1
    b2 = _unit(b2)
    return np.column_stack([b1, b2, np.cross(b1, b2)])


class BishopFrames:
    """Torsion-free frame construction and comparison"""

    @staticmethod
    def default_initial_frame(tangent) -> Frame:
        """b1 = tangent, b2 = the least aligned coordinate axis projected off b1"""
        b1 = _unit(np.asarray(tangent, dtype=float))
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(b1)))] = 1.0
        b2 = _unit(axis - np.dot(axis, b1) * b1)
        return Frame.from_vectors(b1, b2, np.cross(b1, b2))

    @staticmethod
    def parallel_transport(vector: np.ndarray, t0: np.ndarray, t1: np.ndarray) -> np.ndarray:
        """Rotate a vector normal to t0 about t0 x t1 so that it is normal to t1"""
        b = np.cross(t0, t1)
        norm = np.linalg.norm(b)
        if norm < PARALLEL_EPS:
            return vector
        b = b / norm
        n0 = np.cross(t0, b)
        n1 = np.cross(t1, b)
        return np.dot(vector, n0) * n1 + np.dot(vector, b) * b

    @staticmethod
    def discrete_parallel_transport(rod: DiscreteRod, initial: Optional[Frame] = None) -> List[Frame]:
        """One frame per edge, each obtained from its predecessor by the minimal rotation"""
        units = RodGeometry.unit_edges(rod)
        if initial is None:
            initial = BishopFrames.default_initial_frame(units[0])
        if np.linalg.norm(initial.b1 - units[0]) > ALIGNMENT_TOLERANCE:
            raise InvalidInputError("Initial frame must be aligned with the first edge")

        frames = [initial]
        b2 = initial.b2
        for i in range(1, len(units)):
            b2 = BishopFrames.parallel_transport(b2, units[i - 1], units[i])
            b2 = _unit(b2 - np.dot(b2, units[i]) * units[i])
            frames.append(Frame.from_vectors(units[i], b2, np.cross(units[i], b2)))
        return frames

    @staticmethod
    def _integrate(
        breaks: np.ndarray,
        derivatives: Callable,
        initial: np.ndarray,
        steps_per_segment: int,
        speed_threshold: float,
    ) -> FrameField:
        """
        RK4 for B' = skew(omega) B with omega = y' x y'' / |y'|^2 on each
        interval [breaks[k], breaks[k+1]]; derivatives(k, t) returns (y', y'')
        of the smooth piece on interval k.
        """

        def omega(k, t):
            d1, d2 = derivatives(k, t)
            speed_sq = float(np.dot(d1, d1))
            if speed_sq < speed_threshold**2:
                raise DegenerateSpeedError(f"Curve speed {np.sqrt(speed_sq):.3g} at t={t:.6g}")
            if speed_sq < (10.0 * speed_threshold) ** 2:
                logger.warning(f"Curve speed {np.sqrt(speed_sq):.3g} near degenerate at t={t:.6g}")
            return skew(np.cross(d1, d2) / speed_sq)

        ts = [float(breaks[0])]
        mats = [initial]
        B = initial
        for k in range(len(breaks) - 1):
            h = (breaks[k + 1] - breaks[k]) / steps_per_segment
            for j in range(steps_per_segment):
                t = breaks[k] + j * h
                W0 = omega(k, t)
                Wm = omega(k, t + 0.5 * h)
                W1 = omega(k, t + h)
                k1 = W0 @ B
                k2 = Wm @ (B + 0.5 * h * k1)
                k3 = Wm @ (B + 0.5 * h * k2)
                k4 = W1 @ (B + h * k3)
                B = B + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                t_next = breaks[k + 1] if j == steps_per_segment - 1 else t + h
                tangent = _unit(derivatives(k, t_next)[0])
                B = _realign(B, tangent)
                ts.append(float(t_next))
                mats.append(B)
        return FrameField(np.array(ts), np.array(mats))

    @staticmethod
    def integrate_bishop(
        spline: SplineCurve,
        initial: Optional[Frame] = None,
        steps_per_segment: int = 8,
        speed_threshold: float = 1e-6,
    ) -> FrameField:
        """
        Bishop field along the spline, sampled at steps_per_segment nodes per
        knot interval so that every knot is a step boundary.
        """
        if steps_per_segment < 1:
            raise InvalidInputError("steps_per_segment must be at least 1")
        breaks = np.array(spline.knots, dtype=float)
        breaks[-1] = spline.L
        start_tangent = spline.piece_derivatives(0, 0.0)[0]
        if initial is None:
            initial = BishopFrames.default_initial_frame(start_tangent)
        elif np.linalg.norm(initial.b1 - _unit(start_tangent)) > ALIGNMENT_TOLERANCE:
            raise InvalidInputError("Initial frame must be aligned with the spline tangent at t=0")

        field = BishopFrames._integrate(
            breaks, spline.piece_derivatives, initial.matrix, steps_per_segment, speed_threshold
        )
        logger.debug(f"Integrated Bishop field with {len(field)} samples over N={spline.N}")
        return field

    @staticmethod
    def integrate_curve_bishop(
        curve: AnalyticCurve,
        grid: Sequence[float],
        initial: Optional[Frame] = None,
        steps_per_segment: int = 8,
        speed_threshold: float = 1e-6,
    ) -> FrameField:
        """Bishop field of an analytic curve, integrated on the same node layout as a spline"""
        breaks = np.asarray(grid, dtype=float)
        if breaks.ndim != 1 or len(breaks) < 2 or np.any(np.diff(breaks) <= 0.0):
            raise InvalidInputError("Grid must be strictly increasing with at least two points")
        if initial is None:
            initial = BishopFrames.default_initial_frame(curve.deriv1(breaks[0]))

        def derivatives(_k, t):
            return curve.deriv1(t), curve.deriv2(t)

        return BishopFrames._integrate(
            breaks, derivatives, initial.matrix, steps_per_segment, speed_threshold
        )

    @staticmethod
    def apply_twist(field: FrameField, twist: TwistFunction) -> FrameField:
        """Material frames R = B Theta(z(t))"""
        rotations = twist_rotation(twist.eval(field.ts))
        return FrameField(field.ts, field.matrices @ rotations)

    @staticmethod
    def frame_distance_mod_rotation(f: FrameField, g: FrameField, scan_points: int = 720) -> float:
        """
        min over a constant angle c of max_k ||f_k Theta(c) - g_k||_F.

        Per sample the squared error is 6 - 2 tr(Theta(c)^T f_k^T g_k), a
        trigonometric polynomial in c minimized in closed form by
        c_k = atan2(sin part, cos part). The outer minimum is bracketed by a
        scan, refined with a bounded Brent search, and the final value is the
        direct Frobenius distance at the best of the refined and per-sample angles.
        """
        if len(f) != len(g) or not np.allclose(f.ts, g.ts, rtol=0.0, atol=1e-12):
            raise InvalidInputError("Frame fields must share their sample grid")
        if len(f) == 0:
            return 0.0
        M = np.swapaxes(f.matrices, -1, -2) @ g.matrices
        diag = M[:, 0, 0]
        cos_part = M[:, 1, 1] + M[:, 2, 2]
        sin_part = M[:, 2, 1] - M[:, 1, 2]

        def worst_sq(c):
            return float(np.max(6.0 - 2.0 * (diag + np.cos(c) * cos_part + np.sin(c) * sin_part)))

        angles = np.linspace(0.0, 2.0 * np.pi, scan_points, endpoint=False)
        best = angles[int(np.argmin([worst_sq(c) for c in angles]))]
        step = angles[1] - angles[0]
        refined = minimize_scalar(
            worst_sq, bounds=(best - step, best + step), method="bounded", options={"xatol": 1e-10}
        )

        def worst_direct(c):
            diff = f.matrices @ twist_rotation(c) - g.matrices
            return float(np.max(np.linalg.norm(diff, axis=(-2, -1))))

        at_refined = 6.0 - 2.0 * (diag + np.cos(refined.x) * cos_part + np.sin(refined.x) * sin_part)
        binding = np.argsort(at_refined)[-8:]
        per_sample = np.arctan2(sin_part[binding], cos_part[binding])
        candidates = np.concatenate([[refined.x, best], per_sample])
        return min(worst_direct(c) for c in candidates)
