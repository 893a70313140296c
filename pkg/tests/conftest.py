import json

import pytest
from helpers import block_set, el

from app.classes.block_set import Block, validate
from app.classes.index_set import IndexSet
from app.database import database


@pytest.fixture
def arith():
    """{(0, k) : k ≥ 0}"""
    return block_set((0, 0), [(0, 1)])


@pytest.fixture
def pattern12():
    """0, 1, 3, 4, 6, 7, … along the second coordinate."""
    return block_set((0, 0), [(0, 1), (0, 2)])


@pytest.fixture
def two_galaxies():
    return validate(
        [
            Block(el(0, 0), [el(0, 1)], IndexSet.naturals()),
            Block(el(1, 0), [el(0, 1)], IndexSet.naturals()),
        ],
        2,
    )


@pytest.fixture
def junction():
    """{(0, 0), (0, 1), (0, 2)} followed by a galaxy at (1, 0)."""
    return validate(
        [
            Block(el(0, 0), [el(0, 1)], IndexSet.interval(0, 2)),
            Block(el(1, 0), [el(0, 1)], IndexSet.naturals()),
        ],
        2,
    )


@pytest.fixture
def set_file(tmp_path, pattern12):
    path = tmp_path / "pattern.json"
    path.write_text(json.dumps(database.blockset_to_json(pattern12)))
    return path
