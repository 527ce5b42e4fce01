from typing import List, Optional

from pydantic import BaseModel, Field, field_validator


class RodDocument(BaseModel):
    """JSON form of a framed discrete rod"""

    points: List[List[float]]
    angles: Optional[List[float]] = None
    L: Optional[float] = Field(None, gt=0.0)

    @field_validator("points")
    @classmethod
    def check_points(cls, points):
        if any(len(p) != 3 for p in points):
            raise ValueError("every point needs exactly three coordinates")
        if len(points) < 2:
            raise ValueError("a rod needs at least two points")
        return points
