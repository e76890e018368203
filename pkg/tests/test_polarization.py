import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from raman.polarization import X_HAT, Y_HAT, Z_HAT, PolVector, linear_pair, pol_tensor

SQRT_HALF = math.sqrt(0.5)

finite = st.floats(-10, 10, allow_nan=False)

def _vector(values):
    return PolVector(np.array(values[:3]) + 1j * np.array(values[3:]))


vectors = st.lists(finite, min_size=6, max_size=6).filter(lambda v: np.linalg.norm(v) > 1e-3).map(_vector)


def test_spherical_convention():
    assert_allclose(X_HAT.spherical, [SQRT_HALF, 0, -SQRT_HALF], atol=1e-15)
    assert_allclose(Y_HAT.spherical, [-1j * SQRT_HALF, 0, -1j * SQRT_HALF], atol=1e-15)
    assert_allclose(Z_HAT.spherical, [0, 1, 0], atol=1e-15)
    assert Z_HAT.component(0) == pytest.approx(1.0)


def test_normalization_and_round_trip():
    v = PolVector([3.0, 4j, 0.0])
    assert np.linalg.norm(v.cartesian) == pytest.approx(1.0)
    back = PolVector.from_spherical(v.spherical)
    assert_allclose(back.cartesian, v.cartesian, atol=1e-14)


@pytest.mark.parametrize("bad", [[0, 0, 0], [np.nan, 1, 0], [np.inf, 0, 0]])
def test_rejects_degenerate_vectors(bad):
    with pytest.raises(ValueError):
        PolVector(bad)


@pytest.mark.parametrize(
    "psi,expected",
    [(0.0, [1, 0, 0]), (math.pi / 2, [0, 1, 0]), (math.pi / 3, [0.5, math.sqrt(3) / 2, 0])],
)
def test_linear_pair(psi, expected):
    l_c, l = linear_pair(psi)
    assert_allclose(l_c.cartesian, [1, 0, 0])
    assert_allclose(l.cartesian, expected, atol=1e-15)


def test_rank_zero_is_scaled_dot_product():
    for psi in np.linspace(0, math.pi, 7):
        l_c, l = linear_pair(psi)
        f = pol_tensor(l_c, l)
        assert f.get(0, 0) == pytest.approx(-math.cos(psi) / math.sqrt(3), abs=1e-14)


def test_in_plane_rank_one_is_along_z():
    f = pol_tensor(X_HAT, Y_HAT)
    assert f.get(1, 1) == pytest.approx(0, abs=1e-15)
    assert f.get(1, -1) == pytest.approx(0, abs=1e-15)
    assert abs(f.get(1, 0)) > 0.1


def test_out_of_range_component_is_zero():
    assert pol_tensor(X_HAT, Z_HAT).get(1, 2) == 0j


def test_psi_dependence_of_linear_pairs():
    at_zero = pol_tensor(*linear_pair(0.0))
    at_right = pol_tensor(*linear_pair(math.pi / 2))
    for psi in np.linspace(0, 2 * math.pi, 13):
        f = pol_tensor(*linear_pair(psi))
        assert f.get(0, 0) == pytest.approx(math.cos(psi) * at_zero.get(0, 0), abs=1e-14)
        for q in (-1, 0, 1):
            assert f.get(1, q) == pytest.approx(math.sin(psi) * at_right.get(1, q), abs=1e-14)
        for q in range(-2, 3):
            expected = math.cos(psi) * at_zero.get(2, q) + math.sin(psi) * at_right.get(2, q)
            assert f.get(2, q) == pytest.approx(expected, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(u=vectors, v=vectors)
def test_exchange_symmetry(u, v):
    forward, backward = pol_tensor(u, v), pol_tensor(v, u)
    for k in range(3):
        for q in range(-k, k + 1):
            assert backward.get(k, q) == pytest.approx((-1) ** k * forward.get(k, q), abs=1e-13)


@settings(max_examples=50, deadline=None)
@given(u=vectors, phi=st.floats(0, 2 * math.pi))
def test_global_phase_keeps_norm(u, phi):
    assert_allclose(np.abs(u.with_phase(phi).spherical), np.abs(u.spherical), atol=1e-14)
    assert np.linalg.norm(u.spherical) == pytest.approx(1.0)
