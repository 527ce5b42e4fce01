"""Piecewise-cubic spline curves and piecewise-linear twist functions"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.exceptions import DomainError, InvalidInputError
from app.models.rod import KnotPartition

# Slack allowed when checking t against [0, L]
DOMAIN_SLACK = 1e-12


@dataclass(frozen=True)
class CubicSegment:
    """S(sigma) = A sigma^3 + B sigma^2 + C sigma + D on [0, T]"""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    T: float

    def __post_init__(self):
        if not self.T > 0.0:
            raise InvalidInputError(f"Segment length must be positive, got {self.T}")

    def eval(self, sigma):
        sigma = np.asarray(sigma, dtype=float)[..., None]
        return ((self.A * sigma + self.B) * sigma + self.C) * sigma + self.D

    def deriv1(self, sigma):
        sigma = np.asarray(sigma, dtype=float)[..., None]
        return (3.0 * self.A * sigma + 2.0 * self.B) * sigma + self.C

    def deriv2(self, sigma):
        sigma = np.asarray(sigma, dtype=float)[..., None]
        return 6.0 * self.A * sigma + 2.0 * self.B

    def bend_integral(self) -> float:
        """Closed form of the integral of |S''|^2 over [0, T]"""
        T = self.T
        return float(
            12.0 * np.dot(self.A, self.A) * T**3
            + 12.0 * np.dot(self.A, self.B) * T**2
            + 4.0 * np.dot(self.B, self.B) * T
        )


class SplineCurve:
    """
    C1 curve y(t) = eta(lambda t) on [0, L].

    eta is stored in the unrescaled tau variable as N + 1 polynomial pieces:
    piece 0 and piece N are the linear caps, pieces 1..N-1 the cubic segments
    joining consecutive edge midpoints. At a knot the right-hand piece is used.
    """

    def __init__(self, partition: KnotPartition, coefficients: np.ndarray):
        n_pieces = partition.N + 1
        if coefficients.shape != (n_pieces, 4, 3):
            raise InvalidInputError(
                f"Expected coefficients of shape {(n_pieces, 4, 3)}, got {coefficients.shape}"
            )
        self.partition = partition
        self._coefficients = coefficients
        self._coefficients.setflags(write=False)

    @property
    def L(self) -> float:
        return self.partition.reference_length

    @property
    def lambda_(self) -> float:
        return self.partition.lambda_

    @property
    def N(self) -> int:
        return self.partition.N

    @property
    def knots(self) -> np.ndarray:
        """Knots t_0..t_{N+1} on [0, L]"""
        return self.partition.ts

    def segment(self, k: int) -> CubicSegment:
        """Polynomial piece k in the tau variable (0 and N are the caps)"""
        A, B, C, D = self._coefficients[k]
        taus = self.partition.taus
        return CubicSegment(A=A, B=B, C=C, D=D, T=float(taus[k + 1] - taus[k]))

    def segments(self):
        return [self.segment(k) for k in range(1, self.N)]

    def _check_domain(self, t: np.ndarray):
        if np.any(t < -DOMAIN_SLACK) or np.any(t > self.L + DOMAIN_SLACK):
            raise DomainError(f"Parameter outside [0, {self.L}]")

    def locate(self, t) -> Tuple[np.ndarray, np.ndarray]:
        """Piece index and local tau offset for each parameter"""
        t = np.asarray(t, dtype=float)
        self._check_domain(t)
        tau = np.clip(t * self.lambda_, 0.0, self.partition.total_length)
        taus = self.partition.taus
        k = np.clip(np.searchsorted(taus, tau, side="right") - 1, 0, self.N)
        return k, tau - taus[k]

    def _evaluate(self, k, sigma, order: int):
        A, B, C, D = (self._coefficients[k, j] for j in range(4))
        sigma = np.asarray(sigma, dtype=float)[..., None]
        lam = self.lambda_
        if order == 0:
            return ((A * sigma + B) * sigma + C) * sigma + D
        if order == 1:
            return lam * ((3.0 * A * sigma + 2.0 * B) * sigma + C)
        return lam**2 * (6.0 * A * sigma + 2.0 * B)

    def eval(self, t) -> np.ndarray:
        k, sigma = self.locate(t)
        return self._evaluate(k, sigma, 0)

    def deriv1(self, t) -> np.ndarray:
        k, sigma = self.locate(t)
        return self._evaluate(k, sigma, 1)

    def deriv2(self, t) -> np.ndarray:
        k, sigma = self.locate(t)
        return self._evaluate(k, sigma, 2)

    def piece_derivatives(self, k: int, t) -> Tuple[np.ndarray, np.ndarray]:
        """y' and y'' of piece k at t, without knot lookup"""
        sigma = np.asarray(t, dtype=float) * self.lambda_ - self.partition.taus[k]
        return self._evaluate(k, sigma, 1), self._evaluate(k, sigma, 2)

    def __repr__(self):
        return f"<SplineCurve(N={self.N}, L={self.L}, lambda={self.lambda_:.6g})>"


class TwistFunction:
    """Piecewise-linear twist through (t_i, phi_i), constant beyond t_1 and t_N"""

    def __init__(self, knots, values, L: float):
        knots = np.array(knots, dtype=float)
        values = np.array(values, dtype=float)
        if knots.shape != values.shape or knots.ndim != 1 or len(knots) == 0:
            raise InvalidInputError("Twist knots and values must be matching 1D sequences")
        if np.any(np.diff(knots) <= 0.0):
            raise InvalidInputError("Twist knots must be strictly increasing")
        knots.setflags(write=False)
        values.setflags(write=False)
        self.knots = knots
        self.values = values
        self.L = float(L)
        self.slopes = np.diff(values) / np.diff(knots)

    def _check_domain(self, t: np.ndarray):
        if np.any(t < -DOMAIN_SLACK) or np.any(t > self.L + DOMAIN_SLACK):
            raise DomainError(f"Parameter outside [0, {self.L}]")

    def eval(self, t):
        t = np.asarray(t, dtype=float)
        self._check_domain(t)
        return np.interp(t, self.knots, self.values)

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        self._check_domain(t)
        if len(self.slopes) == 0:
            return np.zeros_like(t)
        i = np.searchsorted(self.knots, t, side="right") - 1
        inside = (i >= 0) & (i < len(self.slopes))
        return np.where(inside, self.slopes[np.clip(i, 0, len(self.slopes) - 1)], 0.0)
