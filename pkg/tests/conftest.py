import os

import numpy as np
import pytest


@pytest.fixture
def rng():
    """Seeded generator; override the seed with SINGSHOCK_SEED."""
    seed = int(os.environ.get("SINGSHOCK_SEED", "20260826"))
    return np.random.default_rng(seed)
