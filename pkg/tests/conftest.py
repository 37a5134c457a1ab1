import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fairweigh.data import generate_synthetic


@pytest.fixture
def biased_ds():
    return generate_synthetic(2000, 0.8, seed=11)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_instance(rng, m, require_all_cells=False, max_tries=200):
    """Random (preds, labels, sensitive) triple of length m."""
    for _ in range(max_tries):
        preds = rng.integers(0, 2, m)
        labels = rng.integers(0, 2, m)
        sensitive = rng.integers(0, 2, m)
        if not require_all_cells:
            return preds, labels, sensitive
        ok = all(
            np.any((labels == y) & (sensitive == a)) for y in (0, 1) for a in (0, 1)
        )
        if ok:
            return preds, labels, sensitive
    raise RuntimeError("could not generate an instance with all cells populated")
