"""Discrete rod value types: point chains, framed rods and knot partitions"""
from dataclasses import dataclass, field

import numpy as np

from app.exceptions import DegenerateRodError, InvalidInputError

# Consecutive edges closer than this to a half turn count as reversing
REVERSAL_MARGIN = 1e-9


def _readonly(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    if arr.ndim != ndim:
        raise InvalidInputError(f"Expected a {ndim}-dimensional array, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class DiscreteRod:
    """
    Open chain of points x_0 ... x_N in R^3.

    Rejects zero-length edges and 180 degree turns between consecutive edges.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = _readonly(self.points, 2)
        if pts.shape[1] != 3:
            raise InvalidInputError(f"Points must be 3D, got {pts.shape[1]} components")
        if pts.shape[0] < 2:
            raise InvalidInputError("A rod needs at least two points")
        if not np.all(np.isfinite(pts)):
            raise InvalidInputError("Points must be finite")

        edges = np.diff(pts, axis=0)
        lengths = np.linalg.norm(edges, axis=1)
        if np.any(lengths <= 0.0):
            i = int(np.argmin(lengths)) + 1
            raise DegenerateRodError(f"Edge {i} has zero length")

        if len(edges) > 1:
            cross = np.linalg.norm(np.cross(edges[:-1], edges[1:]), axis=1)
            dot = np.einsum("ij,ij->i", edges[:-1], edges[1:])
            turn = np.arctan2(cross, dot)
            if np.any(turn >= np.pi - REVERSAL_MARGIN):
                i = int(np.argmax(turn)) + 1
                raise DegenerateRodError(f"Edges reverse direction at point {i}")

        object.__setattr__(self, "points", pts)

    @property
    def N(self) -> int:
        """Number of edges"""
        return self.points.shape[0] - 1

    @property
    def edges(self) -> np.ndarray:
        return np.diff(self.points, axis=0)

    def __len__(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class FramedDiscreteRod:
    """A rod together with one twist angle per edge"""

    rod: DiscreteRod
    angles: np.ndarray

    def __post_init__(self):
        angles = _readonly(self.angles, 1)
        if angles.shape[0] != self.rod.N:
            raise InvalidInputError(
                f"Expected {self.rod.N} angles (one per edge), got {angles.shape[0]}"
            )
        if not np.all(np.isfinite(angles)):
            raise InvalidInputError("Angles must be finite")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def untwisted(cls, rod: DiscreteRod) -> "FramedDiscreteRod":
        return cls(rod, np.zeros(rod.N))

    @property
    def N(self) -> int:
        return self.rod.N


@dataclass(frozen=True)
class KnotPartition:
    """Knots tau_0..tau_{N+1} on [0, l(X)] and their rescaled copies t_i = tau_i / lambda"""

    total_length: float
    reference_length: float
    taus: np.ndarray
    chords: np.ndarray = field(repr=False)

    def __post_init__(self):
        taus = _readonly(self.taus, 1)
        if np.any(np.diff(taus) <= 0.0):
            raise InvalidInputError("Knots must be strictly increasing")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "chords", _readonly(self.chords, 1))

    @property
    def lambda_(self) -> float:
        return self.total_length / self.reference_length

    @property
    def ts(self) -> np.ndarray:
        return self.taus / self.lambda_

    @property
    def N(self) -> int:
        return len(self.chords)
