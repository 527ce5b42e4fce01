"""Orthonormal frames and sampled frame fields"""
from dataclasses import dataclass

import numpy as np

from app.exceptions import InvalidInputError

ORTHONORMAL_TOLERANCE = 1e-9


def orthonormality_defect(matrices: np.ndarray) -> np.ndarray:
    """||B^T B - I||_F per matrix, for a single (3, 3) or a stack (n, 3, 3)"""
    m = np.asarray(matrices, dtype=float)
    gram = np.swapaxes(m, -1, -2) @ m
    return np.linalg.norm(gram - np.eye(3), axis=(-2, -1))


@dataclass(frozen=True)
class Frame:
    """Rotation matrix whose columns are b1 (tangent), b2, b3"""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise InvalidInputError(f"Frame must be 3x3, got {m.shape}")
        if orthonormality_defect(m) > ORTHONORMAL_TOLERANCE or np.linalg.det(m) <= 0.0:
            raise InvalidInputError("Frame is not a proper rotation")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_vectors(cls, b1, b2, b3) -> "Frame":
        return cls(np.column_stack([b1, b2, b3]))

    @classmethod
    def identity(cls) -> "Frame":
        return cls(np.eye(3))

    @property
    def b1(self) -> np.ndarray:
        return self.matrix[:, 0]

    @property
    def b2(self) -> np.ndarray:
        return self.matrix[:, 1]

    @property
    def b3(self) -> np.ndarray:
        return self.matrix[:, 2]


@dataclass(frozen=True)
class FrameField:
    """Frames sampled at increasing parameters t_0..t_M"""

    ts: np.ndarray
    matrices: np.ndarray

    def __post_init__(self):
        ts = np.array(self.ts, dtype=float)
        mats = np.array(self.matrices, dtype=float)
        if ts.ndim != 1 or mats.shape != (len(ts), 3, 3):
            raise InvalidInputError(
                f"Frame field needs matching samples, got {ts.shape} and {mats.shape}"
            )
        ts.setflags(write=False)
        mats.setflags(write=False)
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "matrices", mats)

    def __len__(self):
        return len(self.ts)

    def max_orthonormality_defect(self) -> float:
        if len(self) == 0:
            return 0.0
        return float(np.max(orthonormality_defect(self.matrices)))
