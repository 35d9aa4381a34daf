import numpy as np
import pytest

from src.problem import ProblemInstance, generate_instance


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def identity_instance():
    """A = I_2, y = (2, 0): the hand-computed step examples."""
    return ProblemInstance(a_matrix=np.eye(2), y=np.array([2.0, 0.0]))


@pytest.fixture
def small_instance():
    """Noiseless 5x8 instance with a 3-sparse truth."""
    return generate_instance(5, 8, 3, noise_std=0.0, seed=3)


@pytest.fixture
def medium_instance():
    """Noiseless 50x100 instance with a 5-sparse truth."""
    return generate_instance(50, 100, 5, noise_std=0.0, seed=11)
