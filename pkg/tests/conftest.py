import numpy as np
import pytest

from extlift.fingroup import dihedral, direct_product, make_cyclic, quaternion, symmetric


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def groups():
    Z = make_cyclic
    return {
        "Z1": Z(1),
        "Z2": Z(2),
        "Z3": Z(3),
        "Z4": Z(4),
        "Z6": Z(6),
        "V4": direct_product(Z(2), Z(2)),
        "S3": symmetric(3),
        "D4": dihedral(4),
        "Q8": quaternion(),
    }
