from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PenaltyParams(BaseModel):
    """Exponents of the penalty N^alpha |lambda - 1| + N^beta max edge"""

    alpha: float = Field(1.0, gt=0.0, lt=2.0)
    beta: float = Field(0.5, gt=0.0, lt=1.0)
    L: Optional[float] = Field(None, gt=0.0)
    mode: Literal["soft", "hard"] = "soft"


class MaterialParams(BaseModel):
    bend_coefficient: float = Field(2.0, gt=0.0)
    twist_coefficient: float = Field(2.0, gt=0.0)


class EnergyReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True, ser_json_inf_nan="constants")

    N: int
    lambda_: float = Field(alias="lambda")
    max_edge: float
    bend: float
    tor: float
    pen: float
    total: float

    @model_validator(mode="after")
    def check_total(self):
        expected = self.bend + self.tor + self.pen
        if abs(self.total - expected) > 1e-12 * max(abs(expected), 1.0):
            raise ValueError(f"total {self.total} != bend + tor + pen = {expected}")
        return self
