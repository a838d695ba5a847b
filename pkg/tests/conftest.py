import numpy as np
import pytest

from qwe.codes import load_code
from qwe.polynomials import WeightScheme


@pytest.fixture
def sl():
    return WeightScheme("shor-laflamme", 2)


@pytest.fixture
def rng():
    return np.random.default_rng(233)


@pytest.fixture
def five_qubit():
    return load_code("five_qubit")


@pytest.fixture
def four_two_two():
    return load_code("four_two_two")
