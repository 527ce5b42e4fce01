from functools import lru_cache
from typing import List

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_prefix="ROD_", case_sensitive=False)

    # Penalty exponents, alpha in (0,2) and beta in (0,1)
    penalty_alpha: float = 1.0
    penalty_beta: float = 0.5

    # EJ and GJ1; 2 gives unit prefactors after the 1/2
    bend_coefficient: float = 2.0
    twist_coefficient: float = 2.0

    # Frame integration
    steps_per_segment: int = 8
    degenerate_speed_threshold: float = 1e-6

    # Root finding and quadrature tolerances
    root_tolerance: float = 1e-14
    endpoint_tolerance: float = 1e-12
    quadrature_rtol: float = 1e-12

    # Convergence sweeps
    default_sweep: List[int] = [8, 16, 32, 64, 128, 256]
    max_workers: int = 1

    log_level: str = "INFO"


@lru_cache()
def get_settings():
    return Settings()
