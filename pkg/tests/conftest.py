import pathlib

import numpy as np
import pytest

from quasisym import FitConfig

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

FAST = FitConfig(method="full")


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_feasible_a(rng, I, t, scale=1.0):
    """Random a with a_I = 0 inside the feasible region."""
    while True:
        a = np.append(rng.uniform(-scale, scale, I - 1), 0.0)
        if t * a.max() - a.min() < 0.95:
            return a
