"""Analytic arc-length curves and twist profiles used as continuum ground truth"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


class AnalyticCurve(ABC):
    """
    Smooth curve u: [0, L] -> R^3 parametrized by arc length.

    Derivative methods accept a scalar or an array of parameters and return
    shape (3,) or (n, 3) respectively.
    """

    name: str = "curve"

    def __init__(
        self,
        length: float,
        second_derivative_bound: float,
        third_derivative_bound: float,
        exact_bend_energy: Optional[float] = None,
    ):
        self.length = float(length)
        self.second_derivative_bound = float(second_derivative_bound)
        self.third_derivative_bound = float(third_derivative_bound)
        self.exact_bend_energy = exact_bend_energy

    @abstractmethod
    def eval(self, s) -> np.ndarray:
        ...

    @abstractmethod
    def deriv1(self, s) -> np.ndarray:
        ...

    @abstractmethod
    def deriv2(self, s) -> np.ndarray:
        ...

    @abstractmethod
    def deriv3(self, s) -> np.ndarray:
        ...

    def __repr__(self):
        return f"<{type(self).__name__}(L={self.length})>"


def _stack(*components) -> np.ndarray:
    return np.stack(np.broadcast_arrays(*components), axis=-1)


class Line(AnalyticCurve):
    name = "line"

    def __init__(self, length: float):
        super().__init__(length, 0.0, 0.0, exact_bend_energy=0.0)

    def eval(self, s):
        s = np.asarray(s, dtype=float)
        return _stack(s, 0.0 * s, 0.0 * s)

    def deriv1(self, s):
        s = np.asarray(s, dtype=float)
        return _stack(1.0 + 0.0 * s, 0.0 * s, 0.0 * s)

    def deriv2(self, s):
        s = np.asarray(s, dtype=float)
        return _stack(0.0 * s, 0.0 * s, 0.0 * s)

    def deriv3(self, s):
        return self.deriv2(s)


class CircularArc(AnalyticCurve):
    """Planar arc of radius R starting at the origin with tangent e_x"""

    name = "arc"

    def __init__(self, radius: float, length: float):
        self.radius = float(radius)
        super().__init__(
            length,
            1.0 / self.radius,
            1.0 / self.radius**2,
            exact_bend_energy=length / self.radius**2,
        )

    def eval(self, s):
        a = np.asarray(s, dtype=float) / self.radius
        R = self.radius
        return _stack(R * np.sin(a), R * (1.0 - np.cos(a)), 0.0 * a)

    def deriv1(self, s):
        a = np.asarray(s, dtype=float) / self.radius
        return _stack(np.cos(a), np.sin(a), 0.0 * a)

    def deriv2(self, s):
        a = np.asarray(s, dtype=float) / self.radius
        k = 1.0 / self.radius
        return _stack(-k * np.sin(a), k * np.cos(a), 0.0 * a)

    def deriv3(self, s):
        a = np.asarray(s, dtype=float) / self.radius
        k2 = 1.0 / self.radius**2
        return _stack(-k2 * np.cos(a), -k2 * np.sin(a), 0.0 * a)


class Helix(AnalyticCurve):
    """u(s) = (a cos(s/c), a sin(s/c), b s/c) with c = sqrt(a^2 + b^2)"""

    name = "helix"

    def __init__(self, a: float, b: float, length: float):
        self.a = float(a)
        self.b = float(b)
        self.c = float(np.hypot(a, b))
        c = self.c
        super().__init__(
            length,
            abs(self.a) / c**2,
            abs(self.a) / c**3,
            exact_bend_energy=length * self.a**2 / c**4,
        )

    def eval(self, s):
        w = np.asarray(s, dtype=float) / self.c
        return _stack(self.a * np.cos(w), self.a * np.sin(w), self.b * w)

    def deriv1(self, s):
        w = np.asarray(s, dtype=float) / self.c
        c = self.c
        return _stack(-self.a / c * np.sin(w), self.a / c * np.cos(w), self.b / c + 0.0 * w)

    def deriv2(self, s):
        w = np.asarray(s, dtype=float) / self.c
        k = self.a / self.c**2
        return _stack(-k * np.cos(w), -k * np.sin(w), 0.0 * w)

    def deriv3(self, s):
        w = np.asarray(s, dtype=float) / self.c
        k = self.a / self.c**3
        return _stack(k * np.sin(w), -k * np.cos(w), 0.0 * w)


@dataclass(frozen=True)
class TwistProfile:
    """Twist angle theta(s) on [0, L] relative to a Bishop frame"""

    name: str
    length: float
    func: Callable
    derivative: Callable
    slope_bound: float
    exact_tor_energy: Optional[float] = None

    def eval(self, s):
        return self.func(np.asarray(s, dtype=float))

    def deriv(self, s):
        return self.derivative(np.asarray(s, dtype=float))
