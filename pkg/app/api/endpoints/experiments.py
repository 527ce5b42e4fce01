"""Convergence experiment endpoints"""
from typing import List

from fastapi import APIRouter, Depends, Path

from app.api.dependencies import material_params, penalty_params
from app.api.errors import http_errors
from app.config import Settings, get_settings
from app.schemas import ConvergeRequest, ConvergenceRow, CounterexampleReport, FrameStudyRequest, FrameStudyRow
from app.services import curves
from app.services.discretize import ChordDiscretizer
from app.services.harness import ConvergenceHarness

router = APIRouter()


def get_harness(settings: Settings = Depends(get_settings)) -> ConvergenceHarness:
    return ConvergenceHarness(
        discretizer=ChordDiscretizer(settings.root_tolerance, settings.endpoint_tolerance),
        steps_per_segment=settings.steps_per_segment,
        speed_threshold=settings.degenerate_speed_threshold,
        max_workers=settings.max_workers,
        quadrature_rtol=settings.quadrature_rtol,
    )


@router.post("/converge", response_model=List[ConvergenceRow])
def converge(
    request: ConvergeRequest,
    harness: ConvergenceHarness = Depends(get_harness),
    settings: Settings = Depends(get_settings),
):
    """Energy convergence table over an N sweep"""
    with http_errors():
        curve = curves.build_curve(request.curve.kind, request.curve.params)
        twist = curves.build_twist(request.twist, curve.length, request.twist_rate)
        return harness.converge(
            curve,
            twist,
            request.N_list or settings.default_sweep,
            penalty_params(settings, request.penalty),
            material_params(settings, request.material),
            with_frames=request.frames,
        )


@router.get("/counterexample/{n}", response_model=CounterexampleReport)
def counterexample(
    n: int = Path(..., ge=3),
    harness: ConvergenceHarness = Depends(get_harness),
    settings: Settings = Depends(get_settings),
):
    """Spacing counterexample report"""
    with http_errors():
        _, report = harness.counterexample_spacing(
            n, penalty_params(settings), material_params(settings)
        )
        return report


@router.post("/frame-study", response_model=List[FrameStudyRow])
def frame_study(
    request: FrameStudyRequest,
    harness: ConvergenceHarness = Depends(get_harness),
    settings: Settings = Depends(get_settings),
):
    """Bishop frame distances over an N sweep"""
    with http_errors():
        if request.steps_per_segment:
            harness = ConvergenceHarness(
                discretizer=harness.discretizer,
                steps_per_segment=request.steps_per_segment,
                speed_threshold=harness.speed_threshold,
                max_workers=harness.max_workers,
                quadrature_rtol=harness.quadrature_rtol,
            )
        curve = curves.build_curve(request.curve.kind, request.curve.params)
        return harness.frame_study(curve, request.N_list or settings.default_sweep)
