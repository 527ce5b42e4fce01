"""Equal-chord discretization of arc-length curves and recovery rods"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from app.exceptions import BracketError, InvalidInputError, RegimeError
from app.models.curve import AnalyticCurve, TwistProfile
from app.models.rod import DiscreteRod, FramedDiscreteRod

logger = logging.getLogger(__name__)

MAX_BISECTIONS = 200


@dataclass(frozen=True)
class ChordWalk:
    """Parameters s_0 = 0 < s_1 < ... reached by chords of length r"""

    radius: float
    params: np.ndarray
    terminated: bool

    @property
    def N(self) -> int:
        return len(self.params) - 1


class ChordDiscretizer:
    """Marches chords of fixed length along a curve and solves for the radius ending at u(L)"""

    def __init__(self, root_tolerance: float = 1e-14, endpoint_tolerance: float = 1e-12):
        self.root_tolerance = root_tolerance
        self.endpoint_tolerance = endpoint_tolerance

    @staticmethod
    def check_regime(curve: AnalyticCurve, r: float):
        if not r > 0.0:
            raise InvalidInputError(f"Chord radius must be positive, got {r}")
        if r * curve.second_derivative_bound >= 1.0:
            raise RegimeError(
                f"r={r} violates r * ||u''|| < 1 (||u''|| = {curve.second_derivative_bound})"
            )

    def step(self, curve: AnalyticCurve, s_i: float, r: float) -> Optional[float]:
        """Smallest s in (s_i, L] with |u(s) - u(s_i)| = r, or None when the chord never reaches r"""
        self.check_regime(curve, r)
        L = curve.length
        if not 0.0 <= s_i <= L:
            raise InvalidInputError(f"s_i={s_i} outside [0, {L}]")
        origin = curve.eval(s_i)

        def gap(s):
            return float(np.linalg.norm(curve.eval(s) - origin)) - r

        lo = s_i
        increment = 0.25 * r
        while True:
            hi = min(lo + increment, L)
            g_hi = gap(hi)
            if g_hi >= 0.0:
                break
            if hi >= L:
                if abs(g_hi) <= self.endpoint_tolerance:
                    return L
                return None
            lo = hi
        if g_hi == 0.0:
            return hi
        logger.debug(f"Chord bracket [{lo:.6g}, {hi:.6g}] from s_i={s_i:.6g}")
        return brentq(gap, lo, hi, xtol=self.root_tolerance, rtol=4 * np.finfo(float).eps)

    def count_segments(self, curve: AnalyticCurve, r: float, limit: Optional[int] = None) -> ChordWalk:
        """Walk chords of length r from s = 0 until the stop condition (or limit steps)"""
        params = [0.0]
        terminated = True
        while limit is None or len(params) - 1 < limit:
            nxt = self.step(curve, params[-1], r)
            if nxt is None:
                break
            params.append(nxt)
            if nxt >= curve.length:
                break
        else:
            terminated = False
        return ChordWalk(radius=r, params=np.array(params), terminated=terminated)

    def _reach(self, curve: AnalyticCurve, r: float, N: int) -> Optional[float]:
        """s_N(r), or None when fewer than N chords fit"""
        walk = self.count_segments(curve, r, limit=N)
        if walk.N < N:
            return None
        return float(walk.params[N])

    def solve_rN(self, curve: AnalyticCurve, N: int) -> ChordWalk:
        """
        Largest radius whose N-chord walk ends at u(L).

        Bisects on whether N chords still fit, over
        [L/N (1 - (L/N)^2 ||u'''||), L/N].
        """
        if N < 1:
            raise InvalidInputError(f"N must be positive, got {N}")
        L = curve.length
        hi = L / N
        self.check_regime(curve, hi)

        s_hi = self._reach(curve, hi, N)
        if s_hi is not None:
            return self._finish(curve, hi, N)

        lo = hi * (1.0 - hi**2 * curve.third_derivative_bound)
        if not lo > 0.0 or self._reach(curve, lo, N) is None:
            raise BracketError(f"No feasible radius bracket for N={N} (lower end {lo})")

        for _ in range(MAX_BISECTIONS):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            s_mid = self._reach(curve, mid, N)
            if s_mid is None:
                hi = mid
            else:
                lo = mid
                if L - s_mid <= self.endpoint_tolerance:
                    break
        logger.debug(f"Solved r_N={lo:.16g} for N={N}")
        return self._finish(curve, lo, N)

    def _finish(self, curve: AnalyticCurve, r: float, N: int) -> ChordWalk:
        walk = self.count_segments(curve, r, limit=N)
        if walk.N < N or abs(walk.params[-1] - curve.length) > 1e-9:
            raise BracketError(f"Walk with r={r} does not end at L={curve.length}")
        return ChordWalk(radius=r, params=walk.params, terminated=True)

    def recovery_rod(self, curve: AnalyticCurve, twist: TwistProfile, N: int) -> FramedDiscreteRod:
        """Points u(s_i) of the equal-chord walk, twist sampled at arc-length midpoints"""
        walk = self.solve_rN(curve, N)
        s = walk.params
        points = curve.eval(s)
        angles = twist.eval(0.5 * (s[:-1] + s[1:]))
        lam = N * walk.radius / curve.length
        logger.info(f"Recovery rod N={N}: r_N={walk.radius:.12g}, lambda={lam:.12g}")
        return FramedDiscreteRod(DiscreteRod(points), angles)
