"""Discrete bending, torsion and penalty energies"""
import logging
import math
from typing import Optional

import numpy as np

from app.exceptions import DegenerateRodError, InvalidInputError
from app.models.rod import DiscreteRod, FramedDiscreteRod
from app.models.spline import SplineCurve
from app.schemas.energy_schema import EnergyReport, MaterialParams, PenaltyParams
from app.services.quadrature import gauss_fixed
from app.services.rod_geometry import RodGeometry
from app.services.spline_builder import SplineBuilder

logger = logging.getLogger(__name__)


def _edge_pair(x_prev, x_mid, x_next):
    x_prev, x_mid, x_next = (np.asarray(p, dtype=float) for p in (x_prev, x_mid, x_next))
    e0 = x_mid - x_prev
    e1 = x_next - x_mid
    r0 = float(np.linalg.norm(e0))
    r1 = float(np.linalg.norm(e1))
    if r0 == 0.0 or r1 == 0.0:
        raise DegenerateRodError("Local energy needs two edges of positive length")
    phi = float(np.arctan2(np.linalg.norm(np.cross(e0, e1)), np.dot(e0, e1)))
    return r0, r1, phi


class EnergyCalculator:
    """Energies of framed discrete rods and their splines"""

    @staticmethod
    def bend_local(x_prev, x_mid, x_next) -> float:
        """2 sin^2(phi/2) (r0^3 + r1^3) / ((r0 + r1)/2)^4"""
        r0, r1, phi = _edge_pair(x_prev, x_mid, x_next)
        mean = 0.5 * (r0 + r1)
        return 2.0 * np.sin(0.5 * phi) ** 2 * (r0**3 + r1**3) / mean**4

    @staticmethod
    def bend_local_tangent(x_prev, x_mid, x_next) -> float:
        """4 / r_mean * tan^2(phi/2)"""
        r0, r1, phi = _edge_pair(x_prev, x_mid, x_next)
        return 4.0 / (0.5 * (r0 + r1)) * np.tan(0.5 * phi) ** 2

    @staticmethod
    def tor_local(x_prev, x_mid, x_next, phi0: float, phi1: float) -> float:
        r0, r1, _ = _edge_pair(x_prev, x_mid, x_next)
        return (phi1 - phi0) ** 2 / (0.5 * (r0 + r1))

    @staticmethod
    def bend_local_sum(rod: DiscreteRod) -> float:
        if rod.N < 2:
            return 0.0
        chords = RodGeometry.chord_lengths(rod)
        phi = RodGeometry.edge_angles(rod)
        r0, r1 = chords[:-1], chords[1:]
        terms = 2.0 * np.sin(0.5 * phi) ** 2 * (r0**3 + r1**3) / (0.5 * (r0 + r1)) ** 4
        return math.fsum(terms)

    @staticmethod
    def tor_local_sum(framed: FramedDiscreteRod) -> float:
        if framed.N < 2:
            return 0.0
        chords = RodGeometry.chord_lengths(framed.rod)
        terms = np.diff(framed.angles) ** 2 / (0.5 * (chords[:-1] + chords[1:]))
        return math.fsum(terms)

    @staticmethod
    def spline_bend(spline: SplineCurve) -> float:
        """Integral of |y''|^2 over [0, L]: lambda^3 times the per-segment closed forms in tau"""
        pieces = [seg.bend_integral() for seg in spline.segments()]
        return spline.lambda_**3 * math.fsum(pieces)

    @staticmethod
    def bend_energy_spline(rod: DiscreteRod, L: float) -> float:
        return EnergyCalculator.spline_bend(SplineBuilder.build_spline(rod, L))

    @staticmethod
    def bend_energy_quadrature(rod: DiscreteRod, L: float, order: int = 32) -> float:
        """Gauss quadrature of |y''|^2 on each knot interval, in the t variable"""
        spline = SplineBuilder.build_spline(rod, L)
        knots = spline.knots
        pieces = []
        for k in range(1, spline.N):

            def integrand(t, k=k):
                return np.sum(spline.piece_derivatives(k, t)[1] ** 2, axis=-1)

            pieces.append(gauss_fixed(integrand, knots[k], knots[k + 1], order))
        return math.fsum(pieces)

    @staticmethod
    def tor_energy(framed: FramedDiscreteRod, L: float) -> float:
        """Integral of |z'|^2 for the piecewise-linear twist"""
        twist = SplineBuilder.build_twist(framed, L)
        return math.fsum(twist.slopes**2 * np.diff(twist.knots))

    @staticmethod
    def penalty(
        rod: DiscreteRod, N: int, params: PenaltyParams, L: Optional[float] = None
    ) -> float:
        """N^alpha |lambda - 1| + N^beta max edge; hard mode gives 0 or inf"""
        if N != rod.N:
            raise InvalidInputError(f"N={N} does not match the rod's {rod.N} edges")
        L = L if L is not None else params.L
        if L is None:
            raise InvalidInputError("Penalty needs a reference length L")
        lam = RodGeometry.total_length(rod) / L
        max_edge = RodGeometry.max_edge(rod)
        if params.mode == "hard":
            admissible = abs(lam - 1.0) < N ** (-params.alpha) and max_edge <= N ** (-params.beta)
            return 0.0 if admissible else math.inf
        return N**params.alpha * abs(lam - 1.0) + N**params.beta * max_edge

    @staticmethod
    def _report(rod: DiscreteRod, N: int, L: float, bend: float, tor: float, pen: float,
                mat: MaterialParams) -> EnergyReport:
        bend = 0.5 * mat.bend_coefficient * bend
        tor = 0.5 * mat.twist_coefficient * tor
        return EnergyReport(
            N=N,
            lambda_=RodGeometry.total_length(rod) / L,
            max_edge=RodGeometry.max_edge(rod),
            bend=bend,
            tor=tor,
            pen=pen,
            total=bend + tor + pen,
        )

    @staticmethod
    def total_energy(
        framed: FramedDiscreteRod,
        N: int,
        L: float,
        pen: Optional[PenaltyParams] = None,
        mat: Optional[MaterialParams] = None,
    ) -> EnergyReport:
        pen = pen or PenaltyParams()
        mat = mat or MaterialParams()
        bend = EnergyCalculator.bend_energy_spline(framed.rod, L)
        tor = EnergyCalculator.tor_energy(framed, L)
        penalty = EnergyCalculator.penalty(framed.rod, N, pen, L)
        return EnergyCalculator._report(framed.rod, N, L, bend, tor, penalty, mat)

    @staticmethod
    def local_total_energy(
        framed: FramedDiscreteRod,
        N: int,
        L: float,
        pen: Optional[PenaltyParams] = None,
        mat: Optional[MaterialParams] = None,
    ) -> EnergyReport:
        """Same report with the nearest-neighbour sums in place of the spline integrals"""
        pen = pen or PenaltyParams()
        mat = mat or MaterialParams()
        bend = EnergyCalculator.bend_local_sum(framed.rod)
        tor = EnergyCalculator.tor_local_sum(framed)
        penalty = EnergyCalculator.penalty(framed.rod, N, pen, L)
        return EnergyCalculator._report(framed.rod, N, L, bend, tor, penalty, mat)

    @staticmethod
    def segment_scalar_products(rod: DiscreteRod) -> np.ndarray:
        """
        Per interior segment, rows of
        [|A|^2 T^6, (A.B) T^5, |B|^2 T^4] followed by their expressions in the
        turning angle and the two adjacent chords. Shape (N - 1, 2, 3).
        """
        spline = SplineBuilder.build_spline(rod, RodGeometry.total_length(rod))
        chords = RodGeometry.chord_lengths(rod)
        phi = RodGeometry.edge_angles(rod)
        rows = []
        for i, seg in enumerate(spline.segments()):
            T = seg.T
            computed = [
                np.dot(seg.A, seg.A) * T**6,
                np.dot(seg.A, seg.B) * T**5,
                np.dot(seg.B, seg.B) * T**4,
            ]
            r, r_next = chords[i], chords[i + 1]
            s2 = np.sin(0.5 * phi[i]) ** 2
            closed = [
                s2 * (r_next - r) ** 2,
                -s2 * (2.0 * r_next - r) * (r_next - r),
                s2 * (2.0 * r_next - r) ** 2,
            ]
            rows.append([computed, closed])
        return np.array(rows).reshape(-1, 2, 3)

    @staticmethod
    def speed_bound(spline: SplineCurve) -> float:
        """||y''||_{L2} lambda^{-1/2} max_i sqrt(r_i), bounding sup ||y'| - lambda|"""
        l2 = math.sqrt(EnergyCalculator.spline_bend(spline))
        max_chord = float(np.max(spline.partition.chords))
        return l2 * math.sqrt(max_chord / spline.lambda_)
