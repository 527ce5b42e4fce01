from app.schemas.energy_schema import PenaltyParams, MaterialParams, EnergyReport
from app.schemas.rod_schema import RodDocument
from app.schemas.convergence_schema import (
    CurveSpec,
    ConvergenceRow,
    CounterexampleReport,
    FrameStudyRow,
    UniformErrorReport,
    DiscretizeRequest,
    EnergyRequest,
    ConvergeRequest,
    FrameStudyRequest,
)

__all__ = [
    "PenaltyParams",
    "MaterialParams",
    "EnergyReport",
    "RodDocument",
    "CurveSpec",
    "ConvergenceRow",
    "CounterexampleReport",
    "FrameStudyRow",
    "UniformErrorReport",
    "DiscretizeRequest",
    "EnergyRequest",
    "ConvergeRequest",
    "FrameStudyRequest",
]
