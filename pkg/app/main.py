"""FastAPI application exposing rod discretization and convergence experiments"""
import logging

from fastapi import FastAPI

from app.api.endpoints import experiments, rods
from app.config import get_settings

logging.basicConfig(level=getattr(logging, get_settings().log_level.upper(), logging.INFO))
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Discrete Rod Model API",
    description="Equal-chord discretizations, discrete rod energies and convergence experiments",
    version="1.0.0",
)

app.include_router(rods.router, prefix="/api", tags=["Rods"])
app.include_router(experiments.router, prefix="/api", tags=["Experiments"])


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
