from typing import List

import numpy as np
import pandas as pd
import pytest
from hypothesis import settings

from apps.dataset.services import write_index, write_triplet
from apps.oracle.schemas import CompositeTriplet, JitterSpec
from apps.oracle.services import synth_item

settings.register_profile("ci", settings(max_examples=500, deadline=None))
settings.register_profile("dev", settings(max_examples=50, deadline=None))
settings.load_profile("dev")


def random_spd(rng: np.random.Generator, scale: float = 1.0, floor: float = 1e-3):
    """Random symmetric positive definite 3x3 matrix."""
    b = rng.normal(0.0, scale, size=(3, 3))
    return b @ b.T + floor * np.eye(3)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def triplet() -> CompositeTriplet:
    return synth_item(0, 0, (48, 48), JitterSpec())


@pytest.fixture
def triplets() -> List[CompositeTriplet]:
    return [synth_item(i, 7, (32, 32), JitterSpec()) for i in range(6)]


@pytest.fixture
def dataset_dir(tmp_path, triplets):
    root = tmp_path / "synth"
    for t in triplets:
        write_triplet(t, root)
    rows = [
        {"name": t.name, "split": "test" if i == 5 else "train", "clip_fraction": 0.0}
        for i, t in enumerate(triplets)
    ]
    write_index(root, pd.DataFrame(rows))
    return root
