"""Energy parameters resolved from request bodies with configured fallbacks"""
from typing import Optional

from fastapi import HTTPException

from app.config import Settings
from app.schemas import MaterialParams, PenaltyParams


def penalty_params(settings: Settings, requested: Optional[PenaltyParams] = None) -> PenaltyParams:
    if requested is not None:
        return requested
    try:
        return PenaltyParams(alpha=settings.penalty_alpha, beta=settings.penalty_beta)
    except ValueError as e:
        raise HTTPException(status_code=500, detail=f"Invalid penalty configuration: {e}") from e


def material_params(settings: Settings, requested: Optional[MaterialParams] = None) -> MaterialParams:
    if requested is not None:
        return requested
    try:
        return MaterialParams(
            bend_coefficient=settings.bend_coefficient,
            twist_coefficient=settings.twist_coefficient,
        )
    except ValueError as e:
        raise HTTPException(status_code=500, detail=f"Invalid material configuration: {e}") from e
