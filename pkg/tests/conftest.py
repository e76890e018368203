"""Shared fixtures: presets and seeded random schemes / inputs."""
import math

import numpy as np
import pytest

from raman.angular import HalfInt
from raman.kernel import RamanInput
from raman.polarization import PolVector, linear_pair
from raman.scheme import LevelScheme, validate


def random_scheme(rng, J_a_twice=None) -> LevelScheme:
    """A valid scheme with momenta small enough for fast tests (all <= 6)."""
    while True:
        I = HalfInt(int(rng.integers(1, 8)))
        J_a = HalfInt(J_a_twice if J_a_twice is not None else int(rng.integers(1, 4)))
        J_b = HalfInt(J_a.twice_value + 2 * int(rng.integers(-1, 2)))
        if J_b.twice_value < 0 or J_a.twice_value + J_b.twice_value < 2:
            continue
        ground = LevelScheme(I, I, I, J_a, J_b).ground_range()
        if len(ground) < 2:
            continue
        F_a, F_prime_a = rng.choice(len(ground), size=2, replace=False)
        scheme = LevelScheme(ground[F_a], ground[F_prime_a], I, J_a, J_b)
        validate(scheme)
        return scheme


def random_polarization(rng) -> PolVector:
    return PolVector(rng.normal(size=3) + 1j * rng.normal(size=3))


def random_input(rng, theta_max=30.0, scheme=None) -> RamanInput:
    scheme = scheme or random_scheme(rng)
    return RamanInput(
        scheme,
        theta_c=float(rng.uniform(0, theta_max)),
        theta=float(rng.uniform(0, theta_max)),
        l_c=random_polarization(rng),
        l=random_polarization(rng),
    )


def linear_input(scheme, theta, theta_c, psi_deg) -> RamanInput:
    l_c, l = linear_pair(math.radians(psi_deg))
    return RamanInput(scheme, theta_c=theta_c, theta=theta, l_c=l_c, l=l)


@pytest.fixture
def rb85():
    return LevelScheme.preset("rb85")


@pytest.fixture
def cs133():
    return LevelScheme.preset("cs133")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def random_inputs():
    """100 inputs: both presets plus random schemes, elliptical polarizations."""
    gen = np.random.default_rng(7)
    presets = [LevelScheme.preset("rb85"), LevelScheme.preset("cs133")]
    inputs = [random_input(gen, scheme=presets[i % 2]) for i in range(20)]
    inputs += [random_input(gen) for _ in range(80)]
    return inputs


def pytest_collection_modifyitems(items):
    # everything not marked integration counts as a unit test
    for item in items:
        if item.get_closest_marker("integration") is None:
            item.add_marker(pytest.mark.unit)
