"""Rod files: plain text (points, then angles after '#angles') and JSON"""
import json
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from pydantic import ValidationError

from app.exceptions import InvalidInputError, RodFormatError
from app.models.rod import DiscreteRod, FramedDiscreteRod
from app.schemas.rod_schema import RodDocument

ANGLES_MARKER = "#angles"
LENGTH_MARKER = "#L"


class RodSerializer:
    """Read and write framed rods with exact float round trip"""

    @staticmethod
    def to_document(framed: FramedDiscreteRod, L: Optional[float] = None) -> RodDocument:
        return RodDocument(
            points=framed.rod.points.tolist(),
            angles=framed.angles.tolist(),
            L=L,
        )

    @staticmethod
    def from_document(doc: RodDocument) -> Tuple[FramedDiscreteRod, Optional[float]]:
        rod = DiscreteRod(np.array(doc.points, dtype=float))
        angles = np.zeros(rod.N) if doc.angles is None else np.array(doc.angles, dtype=float)
        return FramedDiscreteRod(rod, angles), doc.L

    @staticmethod
    def to_text(framed: FramedDiscreteRod, L: Optional[float] = None) -> str:
        lines = []
        if L is not None:
            lines.append(f"{LENGTH_MARKER} {float(L)!r}")
        for p in framed.rod.points:
            lines.append(" ".join(repr(float(v)) for v in p))
        lines.append(ANGLES_MARKER)
        lines.extend(repr(float(a)) for a in framed.angles)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> Tuple[FramedDiscreteRod, Optional[float]]:
        points, angles = [], []
        L = None
        in_angles = False
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                if line == ANGLES_MARKER:
                    in_angles = True
                elif line.startswith(LENGTH_MARKER + " "):
                    L = float(line.split()[1])
                elif line.startswith("#"):
                    continue
                elif in_angles:
                    angles.append(float(line))
                else:
                    coords = [float(v) for v in line.split()]
                    if len(coords) != 3:
                        raise RodFormatError(f"Line {number}: expected 'x y z', got {line!r}")
                    points.append(coords)
            except ValueError as e:
                if isinstance(e, RodFormatError):
                    raise
                raise RodFormatError(f"Line {number}: {e}") from e
        if len(points) < 2:
            raise RodFormatError("Rod file needs at least two points")
        rod = DiscreteRod(np.array(points))
        framed = FramedDiscreteRod(rod, np.array(angles) if in_angles else np.zeros(rod.N))
        return framed, L

    @staticmethod
    def dump(path: Path, framed: FramedDiscreteRod, L: Optional[float] = None):
        path = Path(path)
        if path.suffix.lower() == ".json":
            doc = RodSerializer.to_document(framed, L)
            path.write_text(doc.model_dump_json(indent=2, exclude_none=True))
        else:
            path.write_text(RodSerializer.to_text(framed, L))

    @staticmethod
    def load(path: Path) -> Tuple[FramedDiscreteRod, Optional[float]]:
        path = Path(path)
        if not path.exists():
            raise InvalidInputError(f"Rod file not found: {path}")
        content = path.read_text()
        if path.suffix.lower() == ".json":
            try:
                doc = RodDocument.model_validate(json.loads(content))
            except (json.JSONDecodeError, ValidationError) as e:
                raise RodFormatError(f"Invalid rod JSON in {path}: {e}") from e
            return RodSerializer.from_document(doc)
        return RodSerializer.from_text(content)
