"""Convergence experiments: energy sweeps, Riemann sums, the spacing counterexample and frame studies"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.exceptions import InvalidInputError
from app.models.curve import AnalyticCurve, TwistProfile
from app.models.rod import DiscreteRod, FramedDiscreteRod
from app.schemas.convergence_schema import (
    ConvergenceRow,
    CounterexampleReport,
    FrameStudyRow,
    UniformErrorReport,
)
from app.schemas.energy_schema import MaterialParams, PenaltyParams
from app.services import curves
from app.services.discretize import ChordDiscretizer
from app.services.energy import EnergyCalculator
from app.services.frames import BishopFrames
from app.services.spline_builder import SplineBuilder

logger = logging.getLogger(__name__)

SPACING_LENGTH = 3.0
SPACING_PROBE = 2.0


class ConvergenceHarness:
    """Runs recovery-sequence experiments against continuum ground truth"""

    def __init__(
        self,
        discretizer: Optional[ChordDiscretizer] = None,
        steps_per_segment: int = 8,
        speed_threshold: float = 1e-6,
        max_workers: int = 1,
        quadrature_rtol: float = 1e-12,
    ):
        if steps_per_segment < 1:
            raise InvalidInputError("steps_per_segment must be at least 1")
        self.discretizer = discretizer or ChordDiscretizer()
        self.steps_per_segment = steps_per_segment
        self.speed_threshold = speed_threshold
        self.max_workers = max_workers
        self.quadrature_rtol = quadrature_rtol

    def _map(self, func, items):
        if self.max_workers <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            return list(pool.map(func, items))

    def converge(
        self,
        curve: AnalyticCurve,
        twist: TwistProfile,
        N_list: Sequence[int],
        pen: Optional[PenaltyParams] = None,
        mat: Optional[MaterialParams] = None,
        with_frames: bool = False,
    ) -> List[ConvergenceRow]:
        """One row per N, sorted ascending, with absolute errors against the continuum energies"""
        pen = pen or PenaltyParams()
        mat = mat or MaterialParams()
        L = curve.length
        bend_exact = 0.5 * mat.bend_coefficient * curves.bend_energy(curve, self.quadrature_rtol)
        tor_exact = 0.5 * mat.twist_coefficient * curves.tor_energy(twist, self.quadrature_rtol)
        logger.info(f"Sweep over {curve!r} with twist '{twist.name}', N in {sorted(N_list)}")

        def run(N):
            framed = self.discretizer.recovery_rod(curve, twist, N)
            report = EnergyCalculator.total_energy(framed, N, L, pen, mat)
            frame_dist = self._frame_distance(curve, framed.rod) if with_frames else None
            return ConvergenceRow(
                N=N,
                r_N=report.lambda_ * L / N,
                lambda_=report.lambda_,
                bend=report.bend,
                tor=report.tor,
                pen=report.pen,
                total=report.total,
                bend_err=abs(report.bend - bend_exact),
                tor_err=abs(report.tor - tor_exact),
                frame_dist=frame_dist,
            )

        rows = self._map(run, sorted(set(N_list)))
        logger.info(f"Sweep finished: final bend_err={rows[-1].bend_err:.3e}, tor_err={rows[-1].tor_err:.3e}")
        return rows

    @staticmethod
    def riemann_bend(curve: AnalyticCurve, N: int) -> float:
        """(L/N) sum_{i=1}^{N-1} |second difference / h^2|^2 on the equidistant grid"""
        if N < 3:
            raise InvalidInputError("riemann_bend needs N >= 3")
        h = curve.length / N
        u = curve.eval(np.arange(N + 1) * h)
        second = (u[:-2] + u[2:] - 2.0 * u[1:-1]) / h**2
        return h * math.fsum(np.sum(second**2, axis=1))

    @staticmethod
    def riemann_tor(twist: TwistProfile, N: int) -> float:
        """(L/N) sum_{i=1}^{N-1} |(theta((i+1/2)h) - theta((i-1/2)h)) / h|^2"""
        if N < 3:
            raise InvalidInputError("riemann_tor needs N >= 3")
        h = twist.length / N
        i = np.arange(1, N)
        diff = (twist.eval((i + 0.5) * h) - twist.eval((i - 0.5) * h)) / h
        return h * math.fsum(diff**2)

    @staticmethod
    def spacing_rod(N: int) -> FramedDiscreteRod:
        """Planar rod with geometrically shrinking edges towards x_0 and a final unit edge up"""
        if N < 3:
            raise InvalidInputError("The spacing counterexample needs N >= 3")
        points = np.zeros((N + 1, 3))
        for i in range(1, N):
            points[i, 0] = 4.0 / 2.0 ** (N - i)
        points[N] = (2.0, 1.0, 0.0)
        return FramedDiscreteRod.untwisted(DiscreteRod(points))

    def counterexample_spacing(
        self, N: int, pen: Optional[PenaltyParams] = None, mat: Optional[MaterialParams] = None
    ) -> Tuple[FramedDiscreteRod, CounterexampleReport]:
        """
        Rods whose spline is the same curve for every N >= 3 with lambda = 1 and
        bend = 2, but whose speed at t = 2 is sqrt(2)/2: only the max-edge
        penalty term grows.
        """
        framed = self.spacing_rod(N)
        report = EnergyCalculator.total_energy(framed, N, SPACING_LENGTH, pen, mat)
        spline = SplineBuilder.build_spline(framed.rod, SPACING_LENGTH)
        dy = spline.deriv1(SPACING_PROBE)
        result = CounterexampleReport(
            N=N,
            energy=report,
            y_at_2=spline.eval(SPACING_PROBE).tolist(),
            dy_at_2=dy.tolist(),
            speed_defect=abs(1.0 - float(np.linalg.norm(dy))),
        )
        return framed, result

    def _frame_distance(self, curve: AnalyticCurve, rod: DiscreteRod) -> float:
        spline = SplineBuilder.build_spline(rod, curve.length)
        steps = self.steps_per_segment
        field = BishopFrames.integrate_bishop(spline, None, steps, self.speed_threshold)
        reference = BishopFrames.integrate_curve_bishop(
            curve, field.ts[::steps], None, steps, self.speed_threshold
        )
        return BishopFrames.frame_distance_mod_rotation(field, reference)

    def frame_study(self, curve: AnalyticCurve, N_list: Sequence[int]) -> List[FrameStudyRow]:
        """Distance mod constant rotation between recovery-spline and continuum Bishop fields"""
        twist = curves.make_zero_twist(curve.length)

        def run(N):
            framed = self.discretizer.recovery_rod(curve, twist, N)
            return FrameStudyRow(N=N, frame_dist=self._frame_distance(curve, framed.rod))

        rows = self._map(run, sorted(set(N_list)))
        logger.info(f"Frame study on {curve!r}: " + ", ".join(f"N={r.N}: {r.frame_dist:.3e}" for r in rows))
        return rows

    def uniform_errors(
        self, curve: AnalyticCurve, twist: TwistProfile, N: int, samples: int = 2001
    ) -> UniformErrorReport:
        """Sup-norm distance of the recovery spline and twist to the continuum pair"""
        framed = self.discretizer.recovery_rod(curve, twist, N)
        L = curve.length
        spline = SplineBuilder.build_spline(framed.rod, L)
        z = SplineBuilder.build_twist(framed, L)
        t = np.linspace(0.0, L, samples)
        r_N = spline.lambda_ * L / N
        return UniformErrorReport(
            N=N,
            curve_error=float(np.max(np.linalg.norm(spline.eval(t) - curve.eval(t), axis=-1))),
            curve_bound=L / N + 2.5 * r_N,
            twist_error=float(np.max(np.abs(z.eval(t) - twist.eval(t)))),
            twist_bound=twist.slope_bound * 2.5 * L / N,
        )
