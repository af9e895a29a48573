"""
FIBRA - Pytest fixtures.
"""

import json

import numpy as np
import pytest

from core.catalog import f_functor, point, sierpinski, ss0, three_point_x
from finspace.space import indiscrete
from functorcat.aut import aut_group


@pytest.fixture
def S():
    """Sierpinski space 0 < 1."""
    return sierpinski()


@pytest.fixture
def SS0():
    return ss0()


@pytest.fixture
def X3():
    """{a, b, c} with b ~ c below a."""
    return three_point_x()


@pytest.fixture
def F1():
    return f_functor(1)


@pytest.fixture
def F2():
    return f_functor(2)


@pytest.fixture
def F3():
    return f_functor(3)


@pytest.fixture
def pt():
    return point()


@pytest.fixture
def I2():
    """Indiscrete {1, 2}."""
    return indiscrete(["1", "2"])


@pytest.fixture
def aut_ss0(SS0):
    return aut_group(SS0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def write_doc(tmp_path):
    """Write a JSON document to tmp_path and return its path."""

    def _write(name, payload):
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload, ensure_ascii=False)
        path.write_text(text, encoding="utf-8")
        return path

    return _write
