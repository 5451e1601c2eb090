from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mathkg.seed import seed_graph
from mathkg.store import Graph

REPO = Path(__file__).resolve().parents[1]
DATA_DIR = REPO / "data"
QUERY_FILE = REPO / "queries" / "fruit.rq"
TEMPLATE_DIR = REPO / "templates"
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def seed() -> Graph:
    return seed_graph()


@pytest.fixture(scope="session")
def fruit_query_text() -> str:
    return QUERY_FILE.read_text(encoding="utf-8")


# The algorithm-selection result expected on the seed dataset, by local name.
FRUIT_ROWS = {
    ("FreeFallModelAirDrag", "FreeFallDetermineVelocity", "ComputeEvolutionODE",
     "FreeFallEquationAirDrag", "RKim11"),
    ("FreeFallModelVacuum", "FreeFallDetermineVelocity", "ComputeEvolutionODE",
     "FreeFallEquationVacuum", "RKex11"),
    ("FreeFallModelVacuum", "FreeFallDetermineVelocity", "ComputeEvolutionODE",
     "FreeFallEquationVacuum", "RKim11"),
    ("FreeFallModelVacuum", "FreeFallDetermineVelocity", "ComputeEvolutionODE",
     "FreeFallEquationVacuum", "RK44kutta"),
}
