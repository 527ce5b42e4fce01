from app.models.curve import AnalyticCurve, Line, CircularArc, Helix, TwistProfile
from app.models.rod import DiscreteRod, FramedDiscreteRod, KnotPartition
from app.models.spline import CubicSegment, SplineCurve, TwistFunction
from app.models.frame import Frame, FrameField

__all__ = [
    "AnalyticCurve",
    "Line",
    "CircularArc",
    "Helix",
    "TwistProfile",
    "DiscreteRod",
    "FramedDiscreteRod",
    "KnotPartition",
    "CubicSegment",
    "SplineCurve",
    "TwistFunction",
    "Frame",
    "FrameField",
]
