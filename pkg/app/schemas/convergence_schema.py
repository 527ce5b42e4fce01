from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.schemas.energy_schema import EnergyReport, MaterialParams, PenaltyParams
from app.schemas.rod_schema import RodDocument


class CurveSpec(BaseModel):
    kind: Literal["line", "arc", "helix"]
    params: Dict[str, float]


class ConvergenceRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True, ser_json_inf_nan="constants")

    N: int
    r_N: float
    lambda_: float = Field(alias="lambda")
    bend: float
    tor: float
    pen: float
    total: float
    bend_err: float
    tor_err: float
    frame_dist: Optional[float] = None


class CounterexampleReport(BaseModel):
    N: int
    energy: EnergyReport
    y_at_2: List[float]
    dy_at_2: List[float]
    speed_defect: float


class FrameStudyRow(BaseModel):
    N: int
    frame_dist: float


class UniformErrorReport(BaseModel):
    N: int
    curve_error: float
    curve_bound: float
    twist_error: float
    twist_bound: float


class DiscretizeRequest(BaseModel):
    curve: CurveSpec
    twist: Literal["zero", "linear", "sine"] = "zero"
    twist_rate: float = 1.0
    N: int = Field(..., ge=1)


class EnergyRequest(BaseModel):
    rod: RodDocument
    L: Optional[float] = Field(None, gt=0.0)
    penalty: Optional[PenaltyParams] = None
    material: Optional[MaterialParams] = None
    local: bool = False


class ConvergeRequest(BaseModel):
    curve: CurveSpec
    twist: Literal["zero", "linear", "sine"] = "zero"
    twist_rate: float = 1.0
    N_list: Optional[List[int]] = None
    penalty: Optional[PenaltyParams] = None
    material: Optional[MaterialParams] = None
    frames: bool = False


class FrameStudyRequest(BaseModel):
    curve: CurveSpec
    N_list: Optional[List[int]] = None
    steps_per_segment: Optional[int] = Field(None, ge=1)
