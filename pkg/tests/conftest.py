import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import build_world, new_engine


@pytest.fixture
def engine():
    return new_engine()


@pytest.fixture
def world_engine():
    e = new_engine()
    world = build_world(e)
    return e, world
