"""Chord geometry of discrete rods"""
import math

import numpy as np

from app.exceptions import InvalidInputError
from app.models.rod import DiscreteRod, KnotPartition


class RodGeometry:
    """Chord lengths, knot partitions and turning angles of a point chain"""

    @staticmethod
    def chord_lengths(rod: DiscreteRod) -> np.ndarray:
        return np.linalg.norm(rod.edges, axis=1)

    @staticmethod
    def unit_edges(rod: DiscreteRod) -> np.ndarray:
        edges = rod.edges
        return edges / np.linalg.norm(edges, axis=1)[:, None]

    @staticmethod
    def total_length(rod: DiscreteRod) -> float:
        """Compensated sum of the chord lengths"""
        return math.fsum(RodGeometry.chord_lengths(rod))

    @staticmethod
    def max_edge(rod: DiscreteRod) -> float:
        return float(np.max(RodGeometry.chord_lengths(rod)))

    @staticmethod
    def partition(rod: DiscreteRod, L: float) -> KnotPartition:
        """
        Knots tau_0 = 0, tau_i = r_1 + ... + r_i - r_i/2 for 1 <= i <= N,
        tau_{N+1} = l(X); the rescaled knots are tau_i / lambda with lambda = l(X)/L.
        """
        if not L > 0.0:
            raise InvalidInputError(f"Reference length must be positive, got {L}")
        chords = RodGeometry.chord_lengths(rod)
        total = math.fsum(chords)
        interior = np.cumsum(chords) - 0.5 * chords
        taus = np.concatenate([[0.0], interior, [total]])
        return KnotPartition(total_length=total, reference_length=float(L), taus=taus, chords=chords)

    @staticmethod
    def edge_angles(rod: DiscreteRod) -> np.ndarray:
        """Turning angle at each interior point x_1..x_{N-1}, in [0, pi)"""
        edges = rod.edges
        if len(edges) < 2:
            return np.zeros(0)
        cross = np.linalg.norm(np.cross(edges[:-1], edges[1:]), axis=1)
        dot = np.einsum("ij,ij->i", edges[:-1], edges[1:])
        return np.arctan2(cross, dot)
