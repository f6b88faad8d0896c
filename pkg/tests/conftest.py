import numpy as np
import pytest

# Single recorded seed for every randomized property check.
SEED = 20240824


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_state(rng, cutoff):
    amps = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
    amps /= np.linalg.norm(amps)
    from nlcavity import FockVector

    return FockVector(amps, cutoff)
