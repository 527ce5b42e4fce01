"""CSV exports for plotting"""
import logging
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel

from app.models.frame import FrameField
from app.models.spline import SplineCurve

logger = logging.getLogger(__name__)

SPLINE_COLUMNS = ["t", "x", "y", "z", "dx", "dy", "dz", "ddx", "ddy", "ddz"]
FRAME_COLUMNS = ["t"] + [f"b{i}{c}" for i in (1, 2, 3) for c in "xyz"]


def spline_samples(spline: SplineCurve, samples: int) -> pd.DataFrame:
    t = np.linspace(0.0, spline.L, samples)
    data = np.column_stack([t, spline.eval(t), spline.deriv1(t), spline.deriv2(t)])
    return pd.DataFrame(data, columns=SPLINE_COLUMNS)


def frame_samples(field: FrameField) -> pd.DataFrame:
    # columns of each matrix are b1, b2, b3
    flat = np.swapaxes(field.matrices, -1, -2).reshape(len(field), 9)
    return pd.DataFrame(np.column_stack([field.ts, flat]), columns=FRAME_COLUMNS)


def rows_frame(rows: Sequence[BaseModel]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump(by_alias=True) for row in rows])


def write_csv(df: pd.DataFrame, path: Path):
    df.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Wrote {len(df)} rows to {path}")

