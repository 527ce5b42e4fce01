"""Assigns the C1 spline and the piecewise-linear twist to a framed discrete rod"""
import logging
from typing import Tuple

import numpy as np

from app.exceptions import InvalidInputError
from app.models.rod import DiscreteRod, FramedDiscreteRod
from app.models.spline import CubicSegment, SplineCurve, TwistFunction
from app.services.rod_geometry import RodGeometry

logger = logging.getLogger(__name__)


class SplineBuilder:
    """Build spline curves and twist functions from discrete rods"""

    @staticmethod
    def fit_cubic(
        x_prev,
        x0,
        x1,
        T: float,
        sigmas: Tuple[float, float] = (1.0, 1.0),
    ) -> CubicSegment:
        """
        Cubic S on [0, T] from the midpoint of (x_prev, x0) to the midpoint of
        (x0, x1), with S'(0) = sigma0 * unit(x0 - x_prev) and
        S'(T) = sigma1 * unit(x1 - x0).
        """
        if not T > 0.0:
            raise InvalidInputError(f"Segment length must be positive, got {T}")
        x_prev, x0, x1 = (np.asarray(p, dtype=float) for p in (x_prev, x0, x1))
        sigma0, sigma1 = sigmas
        e0 = x0 - x_prev
        e1 = x1 - x0
        r0 = np.linalg.norm(e0)
        r1 = np.linalg.norm(e1)
        if r0 == 0.0 or r1 == 0.0:
            raise InvalidInputError("Cubic fit needs two edges of positive length")

        start_slope = sigma0 * T / r0 * e0
        end_slope = sigma1 * T / r1 * e1
        half_span = 0.5 * (x1 - x_prev)
        # A T^3 and B T^2 from the two endpoint and two slope conditions
        a_scaled = start_slope + end_slope - 2.0 * half_span
        b_scaled = 3.0 * half_span - 2.0 * start_slope - end_slope
        return CubicSegment(
            A=a_scaled / T**3,
            B=b_scaled / T**2,
            C=sigma0 * e0 / r0,
            D=0.5 * (x_prev + x0),
            T=float(T),
        )

    @staticmethod
    def build_spline(rod: DiscreteRod, L: float) -> SplineCurve:
        """y(t) = eta(lambda t) with linear caps and unit-speed cubic joins in tau"""
        partition = RodGeometry.partition(rod, L)
        x = rod.points
        units = RodGeometry.unit_edges(rod)
        N = rod.N

        coefficients = np.zeros((N + 1, 4, 3))
        coefficients[0, 2] = units[0]
        coefficients[0, 3] = x[0]
        for k in range(1, N):
            T = partition.taus[k + 1] - partition.taus[k]
            seg = SplineBuilder.fit_cubic(x[k - 1], x[k], x[k + 1], T)
            coefficients[k] = (seg.A, seg.B, seg.C, seg.D)
        coefficients[N, 2] = units[N - 1]
        coefficients[N, 3] = 0.5 * (x[N - 1] + x[N])

        logger.debug(f"Built spline with N={N}, lambda={partition.lambda_:.12g}")
        return SplineCurve(partition, coefficients)

    @staticmethod
    def build_twist(framed: FramedDiscreteRod, L: float) -> TwistFunction:
        """Piecewise-linear twist through (t_i, phi_i), i = 1..N"""
        partition = RodGeometry.partition(framed.rod, L)
        knots = partition.ts[1:-1]
        return TwistFunction(knots, framed.angles, L)

    @staticmethod
    def sample_grid(spline: SplineCurve, samples: int) -> np.ndarray:
        """Uniform grid on [0, L] merged with the knots"""
        grid = np.linspace(0.0, spline.L, samples)
        return np.unique(np.concatenate([grid, np.clip(spline.knots, 0.0, spline.L)]))

    @staticmethod
    def max_speed_deviation(spline: SplineCurve, samples: int = 10_000) -> float:
        """sup_t ||y'(t)| - lambda| over a dense grid"""
        t = SplineBuilder.sample_grid(spline, samples)
        speed = np.linalg.norm(spline.deriv1(t), axis=-1)
        return float(np.max(np.abs(speed - spline.lambda_)))
