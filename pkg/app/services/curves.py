"""Fixture curves, twist profiles and the continuous rod energy"""
import logging
from typing import Dict, Optional

import numpy as np

from app.exceptions import InvalidInputError
from app.models.curve import AnalyticCurve, CircularArc, Helix, Line, TwistProfile
from app.services.quadrature import integrate

logger = logging.getLogger(__name__)


def _require_positive(name: str, value: float):
    if not value > 0.0 or not np.isfinite(value):
        raise InvalidInputError(f"{name} must be positive, got {value}")


def make_line(L: float) -> AnalyticCurve:
    _require_positive("L", L)
    return Line(L)


def make_arc(R: float, L: float) -> AnalyticCurve:
    _require_positive("R", R)
    _require_positive("L", L)
    return CircularArc(R, L)


def make_helix(a: float, b: float, L: float) -> AnalyticCurve:
    _require_positive("L", L)
    if a == 0.0 and b == 0.0:
        raise InvalidInputError("Helix needs (a, b) != (0, 0)")
    return Helix(a, b, L)


def make_zero_twist(L: float) -> TwistProfile:
    return TwistProfile(
        name="zero",
        length=L,
        func=lambda s: 0.0 * s,
        derivative=lambda s: 0.0 * s,
        slope_bound=0.0,
        exact_tor_energy=0.0,
    )


def make_linear_twist(L: float, rate: float = 1.0) -> TwistProfile:
    """theta(s) = rate * s"""
    return TwistProfile(
        name="linear",
        length=L,
        func=lambda s: rate * s,
        derivative=lambda s: rate + 0.0 * s,
        slope_bound=abs(rate),
        exact_tor_energy=rate**2 * L,
    )


def make_sine_twist(L: float) -> TwistProfile:
    """theta(s) = sin(s)"""
    return TwistProfile(
        name="sine",
        length=L,
        func=np.sin,
        derivative=np.cos,
        slope_bound=1.0,
        exact_tor_energy=L / 2.0 + np.sin(2.0 * L) / 4.0,
    )


CURVE_PARAMETERS = {
    "line": ("L",),
    "arc": ("R", "L"),
    "helix": ("a", "b", "L"),
}


def build_curve(kind: str, params: Dict[str, float]) -> AnalyticCurve:
    """Construct a fixture curve from its name and keyword parameters"""
    if kind not in CURVE_PARAMETERS:
        raise InvalidInputError(f"Unknown curve '{kind}', expected one of {sorted(CURVE_PARAMETERS)}")
    missing = [p for p in CURVE_PARAMETERS[kind] if p not in params]
    if missing:
        raise InvalidInputError(f"Curve '{kind}' is missing parameters {missing}")
    args = [float(params[p]) for p in CURVE_PARAMETERS[kind]]
    return {"line": make_line, "arc": make_arc, "helix": make_helix}[kind](*args)


def build_twist(kind: str, L: float, rate: float = 1.0) -> TwistProfile:
    if kind == "zero":
        return make_zero_twist(L)
    if kind == "linear":
        return make_linear_twist(L, rate)
    if kind == "sine":
        return make_sine_twist(L)
    raise InvalidInputError(f"Unknown twist '{kind}', expected zero, linear or sine")


def bend_energy(curve: AnalyticCurve, rtol: float = 1e-12) -> float:
    if curve.exact_bend_energy is not None:
        return float(curve.exact_bend_energy)
    return integrate(
        lambda s: np.sum(curve.deriv2(s) ** 2, axis=-1), 0.0, curve.length, rtol=rtol
    )


def tor_energy(twist: TwistProfile, rtol: float = 1e-12) -> float:
    if twist.exact_tor_energy is not None:
        return float(twist.exact_tor_energy)
    return integrate(lambda s: twist.deriv(s) ** 2, 0.0, twist.length, rtol=rtol)


def continuous_energy(
    curve: AnalyticCurve, twist: TwistProfile, rtol: Optional[float] = 1e-12
) -> float:
    """Integral over [0, L] of |u''|^2 + |theta'|^2"""
    if abs(curve.length - twist.length) > 1e-12 * max(curve.length, 1.0):
        raise InvalidInputError(
            f"Curve length {curve.length} and twist length {twist.length} differ"
        )
    return bend_energy(curve, rtol) + tor_energy(twist, rtol)
