import numpy as np
import pytest

from app.exceptions import DegenerateRodError
from app.models.rod import DiscreteRod, FramedDiscreteRod
from app.services import curves
from app.services.discretize import ChordDiscretizer
from app.services.harness import ConvergenceHarness


@pytest.fixture
def line():
    return curves.make_line(1.0)


@pytest.fixture
def arc():
    return curves.make_arc(1.0, np.pi)


@pytest.fixture
def helix():
    return curves.make_helix(1.0, 1.0, 4.0)


@pytest.fixture
def fixture_curves(line, arc, helix):
    return {"line": line, "arc": arc, "helix": helix}


@pytest.fixture
def discretizer():
    return ChordDiscretizer()


@pytest.fixture
def harness():
    return ConvergenceHarness()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_rod(rng, N: int) -> DiscreteRod:
    """N + 1 points drawn uniformly from the unit ball, redrawn until the rod is valid"""
    while True:
        directions = rng.normal(size=(N + 1, 3))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        radii = rng.uniform(size=N + 1) ** (1.0 / 3.0)
        try:
            return DiscreteRod(directions * radii[:, None])
        except DegenerateRodError:
            continue


def random_framed_rod(rng, N: int) -> FramedDiscreteRod:
    return FramedDiscreteRod(random_rod(rng, N), rng.uniform(-np.pi, np.pi, size=N))


@pytest.fixture
def random_rods(rng):
    return [random_framed_rod(rng, int(rng.integers(3, 51))) for _ in range(200)]
