"""Polarization vectors and the rank-k polarization tensor.

Spherical components use the Condon-Shortley convention
    l(+1) = -(x + iy)/sqrt(2),  l(0) = z,  l(-1) = (x - iy)/sqrt(2)
and arrays of spherical components are indexed q + 1 (q = -1, 0, +1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angular import threej_twice

SQRT_HALF = np.sqrt(0.5)

# rows: q = -1, 0, +1; columns: x, y, z
_CART_TO_SPHERICAL = np.array(
    [
        [SQRT_HALF, -1j * SQRT_HALF, 0.0],
        [0.0, 0.0, 1.0],
        [-SQRT_HALF, -1j * SQRT_HALF, 0.0],
    ],
    dtype=complex,
)


@dataclass(frozen=True, eq=False)
class PolVector:
    cartesian: np.ndarray

    def __post_init__(self):
        vec = np.array(self.cartesian, dtype=complex).reshape(3)
        norm = np.linalg.norm(vec)
        if not np.isfinite(norm) or norm == 0.0:
            raise ValueError(f"polarization vector must be finite and non-zero, got {self.cartesian!r}")
        vec = vec / norm
        vec.setflags(write=False)
        object.__setattr__(self, "cartesian", vec)

    @classmethod
    def from_spherical(cls, components) -> "PolVector":
        """Build from (l(-1), l(0), l(+1))."""
        sph = np.asarray(components, dtype=complex).reshape(3)
        return cls(np.linalg.solve(_CART_TO_SPHERICAL, sph))

    @property
    def spherical(self) -> np.ndarray:
        return _CART_TO_SPHERICAL @ self.cartesian

    def component(self, q: int) -> complex:
        return complex(self.spherical[q + 1])

    def conj(self) -> "PolVector":
        return PolVector(np.conj(self.cartesian))

    def with_phase(self, phi: float) -> "PolVector":
        return PolVector(np.exp(1j * phi) * self.cartesian)


X_HAT = PolVector(np.array([1.0, 0.0, 0.0]))
Y_HAT = PolVector(np.array([0.0, 1.0, 0.0]))
Z_HAT = PolVector(np.array([0.0, 0.0, 1.0]))


def linear_pair(psi: float) -> tuple[PolVector, PolVector]:
    """Laser polarization along x and cavity polarization at angle psi (radians) in the xy plane."""
    return X_HAT, PolVector(np.array([np.cos(psi), np.sin(psi), 0.0]))


@dataclass(frozen=True, eq=False)
class PolTensor:
    # components[k] holds f^k_q for q = -k..k at index q + k
    components: tuple[np.ndarray, np.ndarray, np.ndarray]

    def get(self, k: int, q: int) -> complex:
        if abs(q) > k:
            return 0j
        return complex(self.components[k][q + k])


def pol_tensor(l_c: PolVector, l: PolVector) -> PolTensor:
    """f^k_q = sum_{q1,q2} (-1)^q (l_c)_{-q1} (l)_{-q2} (k 1 1; q q1 q2)."""
    uc = l_c.spherical
    ul = l.spherical
    components = []
    for k in range(3):
        values = np.zeros(2 * k + 1, dtype=complex)
        for q in range(-k, k + 1):
            total = 0j
            for q1 in (-1, 0, 1):
                q2 = -q - q1
                if abs(q2) > 1:
                    continue
                coeff = threej_twice(2 * k, 2, 2, 2 * q, 2 * q1, 2 * q2)
                if coeff:
                    total += uc[-q1 + 1] * ul[-q2 + 1] * coeff
            values[q + k] = -total if q % 2 else total
        values.setflags(write=False)
        components.append(values)
    return PolTensor(tuple(components))
