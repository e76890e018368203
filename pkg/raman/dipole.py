"""Dimensionless dipole operators and their polarization projections.

The q-component of the operator coupling ground component F to the excited
manifold has entries

    (g_q)[M; F_b, M_b] = (-1)^(F-M) (F 1 F_b; -M q M_b) g(F, F_b)

with every F_b block side by side in the column space, so the sum over F_b
is carried by matrix products.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.constants import hbar

from .angular import HalfInt, parity, threej_twice, wigner_6j
from .polarization import PolVector
from .scheme import BasisLabel, BasisLayout, LevelScheme, validate

ONE = HalfInt(2)
HBAR_CGS = hbar * 1e7  # erg s


@dataclass(frozen=True, eq=False)
class LabeledOperator:
    matrix: np.ndarray
    row_labels: tuple[BasisLabel, ...]
    col_labels: tuple[BasisLabel, ...]

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        rows, cols = tuple(self.row_labels), tuple(self.col_labels)
        if mat.shape != (len(rows), len(cols)):
            raise ValueError(f"matrix shape {mat.shape} does not match labels ({len(rows)}, {len(cols)})")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def dagger(self) -> "LabeledOperator":
        return LabeledOperator(self.matrix.conj().T, self.col_labels, self.row_labels)

    def __matmul__(self, other: "LabeledOperator") -> "LabeledOperator":
        if self.col_labels != other.row_labels:
            raise ValueError("operator product with mismatched inner labels")
        return LabeledOperator(self.matrix @ other.matrix, self.row_labels, other.col_labels)

    def __add__(self, other: "LabeledOperator") -> "LabeledOperator":
        if self.row_labels != other.row_labels or self.col_labels != other.col_labels:
            raise ValueError("operator sum with mismatched labels")
        return LabeledOperator(self.matrix + other.matrix, self.row_labels, self.col_labels)

    def __sub__(self, other: "LabeledOperator") -> "LabeledOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "LabeledOperator":
        return LabeledOperator(scalar * self.matrix, self.row_labels, self.col_labels)

    __rmul__ = __mul__

    def block(self, row_level: str, col_level: str) -> "LabeledOperator":
        """Sub-block whose row and column labels carry the given level tags."""
        rows = [i for i, lab in enumerate(self.row_labels) if lab.level == row_level]
        cols = [j for j, lab in enumerate(self.col_labels) if lab.level == col_level]
        return LabeledOperator(
            self.matrix[np.ix_(rows, cols)],
            [self.row_labels[i] for i in rows],
            [self.col_labels[j] for j in cols],
        )

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def hermiticity_residual(self) -> float:
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T))


@dataclass(frozen=True)
class PhysicalParams:
    """Gaussian units: e_c in statvolt/cm, omega in rad/s, V_c in cm^3, d_abs in esu cm, T in s."""
    e_c: float
    omega: float
    V_c: float
    d_abs: float
    T: float

    def __post_init__(self):
        for name in ("omega", "V_c", "d_abs", "T"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value!r}")
        if not (math.isfinite(self.e_c) and self.e_c >= 0):
            raise ValueError(f"e_c must be non-negative, got {self.e_c!r}")

    @property
    def vacuum_field(self) -> float:
        return math.sqrt(2 * math.pi * HBAR_CGS * self.omega / self.V_c)


def reduced_rabi(params: PhysicalParams) -> tuple[float, float]:
    """(theta_c, theta): pulse area of the laser and vacuum Rabi angle of the cavity."""
    theta_c = params.d_abs * params.e_c * params.T / HBAR_CGS
    theta = params.d_abs * params.vacuum_field * params.T / HBAR_CGS
    return theta_c, theta


def reduced_coupling(F_a: HalfInt, F_b: HalfInt, scheme: LevelScheme) -> float:
    """g(F_a, F_b) = (-1)^(F_a+J_a+I+1) sqrt((2F_a+1)(2F_b+1)) {I F_a J_a; 1 J_b F_b}."""
    sixj = wigner_6j(scheme.I, F_a, scheme.J_a, ONE, scheme.J_b, F_b)
    if sixj == 0.0:
        return 0.0
    sign = parity(F_a.twice_value + scheme.J_a.twice_value + scheme.I.twice_value + 2)
    return sign * math.sqrt(F_a.multiplicity * F_b.multiplicity) * sixj


@lru_cache(maxsize=None)
def _g_matrices(ground_F: HalfInt, scheme: LevelScheme) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    layout = validate(scheme)
    rows = list(ground_F.projections())
    couplings = {F_b: reduced_coupling(ground_F, F_b, scheme) for F_b in layout.F_b_values}
    out = []
    for q in (-1, 0, 1):
        mat = np.zeros((len(rows), layout.excited_dim))
        for i, M in enumerate(rows):
            for j, lab in enumerate(layout.excited_labels):
                g = couplings[lab.F]
                if g == 0.0 or lab.M.twice_value != M.twice_value - 2 * q:
                    continue
                threej = threej_twice(
                    ground_F.twice_value, 2, lab.F.twice_value,
                    -M.twice_value, 2 * q, lab.M.twice_value,
                )
                mat[i, j] = parity(ground_F.twice_value - M.twice_value) * threej * g
        mat.setflags(write=False)
        out.append(mat)
    return tuple(out)


def build_g(ground_F: HalfInt, scheme: LevelScheme, layout: BasisLayout) -> tuple[LabeledOperator, ...]:
    """Components q = -1, 0, +1 of the dipole operator from ground_F to the excited manifold."""
    rows = layout.labels_for(ground_F)
    return tuple(LabeledOperator(mat, rows, layout.excited_labels) for mat in _g_matrices(ground_F, scheme))


def project(g_components: Sequence[LabeledOperator], l: PolVector) -> LabeledOperator:
    """p = sum_q g_q (l_q)*."""
    sph = np.conj(l.spherical)
    matrix = sum(sph[q + 1] * g_components[q + 1].matrix for q in (-1, 0, 1))
    first = g_components[0]
    return LabeledOperator(matrix, first.row_labels, first.col_labels)
