"""Rod endpoints: discretize fixture curves and evaluate energies"""
from fastapi import APIRouter, Depends, HTTPException

from app.api.dependencies import material_params, penalty_params
from app.api.errors import http_errors
from app.config import Settings, get_settings
from app.schemas import DiscretizeRequest, EnergyReport, EnergyRequest, RodDocument
from app.services import curves
from app.services.discretize import ChordDiscretizer
from app.services.energy import EnergyCalculator
from app.services.rod_io import RodSerializer

router = APIRouter()


@router.post("/discretize", response_model=RodDocument, response_model_exclude_none=True)
def discretize(request: DiscretizeRequest, settings: Settings = Depends(get_settings)):
    """Equal-chord recovery rod of a fixture curve"""
    with http_errors():
        curve = curves.build_curve(request.curve.kind, request.curve.params)
        twist = curves.build_twist(request.twist, curve.length, request.twist_rate)
        discretizer = ChordDiscretizer(settings.root_tolerance, settings.endpoint_tolerance)
        framed = discretizer.recovery_rod(curve, twist, request.N)
        return RodSerializer.to_document(framed, curve.length)


@router.post("/energy", response_model=EnergyReport)
def energy(request: EnergyRequest, settings: Settings = Depends(get_settings)):
    """Energy report of a framed rod"""
    with http_errors():
        framed, stored = RodSerializer.from_document(request.rod)
        L = request.L or stored
        if L is None:
            raise HTTPException(status_code=422, detail="Reference length L is required")
        pen = penalty_params(settings, request.penalty)
        mat = material_params(settings, request.material)
        compute = EnergyCalculator.local_total_energy if request.local else EnergyCalculator.total_energy
        return compute(framed, framed.N, L, pen, mat)
