"""Single-photon emission probability from the ground-manifold operator Q_a.

Q_a^2 is built two ways: from products of the projected dipole operators, and
with the excited-state sums done analytically (coefficients a_k, b_k and the
polarization tensor f^k_q). The probability is

    w = Tr(R R^+) / (2F_a + 1),   R = P_{F'_a} cos(Q_a) P_{F_a}

and the excited-manifold route R = (theta theta_c / 2) p F(Q_b) p_c^+ is kept
as a cross-check.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

import config
from values_main import SMALL_ARGUMENT
from .angular import HalfInt, parity, threej_twice, wigner_6j
from .dipole import LabeledOperator, build_g, project
from .polarization import PolVector, pol_tensor
from .scheme import LEVEL_FA, LEVEL_FPA, BasisLayout, LevelScheme, validate

logger = logging.getLogger(__name__)

ONE = HalfInt(2)


class MatrixFunctionError(ValueError):
    """Matrix function applied to a non-Hermitian or indefinite Q^2."""


@dataclass(frozen=True, eq=False)
class RamanInput:
    scheme: LevelScheme
    theta_c: float
    theta: float
    l_c: PolVector
    l: PolVector

    def __post_init__(self):
        for name in ("theta_c", "theta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    @property
    def layout(self) -> BasisLayout:
        return validate(self.scheme)

    def swapped(self) -> "RamanInput":
        """Exchange F_a <-> F'_a together with theta <-> theta_c and l <-> l_c."""
        return RamanInput(self.scheme.swapped(), self.theta, self.theta_c, self.l, self.l_c)


@dataclass(frozen=True)
class Diagnostics:
    qa_eigenvalues: tuple[float, ...]
    hermiticity_residual: float
    summed_residual: float | None = None
    qb_route_difference: float | None = None


@dataclass(frozen=True)
class EmissionResult:
    w: float
    diagnostics: Diagnostics = field(repr=False)


# --- operator construction ---

def projected_dipoles(inp: RamanInput) -> tuple[LabeledOperator, LabeledOperator]:
    """(p_c, p): laser-coupled F_a and cavity-coupled F'_a operators onto the excited manifold."""
    layout = inp.layout
    p_c = project(build_g(inp.scheme.F_a, inp.scheme, layout), inp.l_c)
    p = project(build_g(inp.scheme.F_prime_a, inp.scheme, layout), inp.l)
    return p_c, p


def _ground_operator(layout: BasisLayout, top_left, top_right, bottom_left, bottom_right) -> LabeledOperator:
    return LabeledOperator(
        np.block([[top_left, top_right], [bottom_left, bottom_right]]),
        layout.ground_labels,
        layout.ground_labels,
    )


def qa_squared_direct(inp: RamanInput) -> LabeledOperator:
    """Q_a^2 = theta_c^2 p_c p_c^+ + theta^2 p p^+ + theta theta_c (p p_c^+ + p_c p^+)."""
    p_c, p = projected_dipoles(inp)
    tc, t = inp.theta_c, inp.theta
    cross = (p_c @ p.dagger()).matrix
    return _ground_operator(
        inp.layout,
        tc ** 2 * (p_c @ p_c.dagger()).matrix,
        t * tc * cross,
        t * tc * cross.conj().T,
        t ** 2 * (p @ p.dagger()).matrix,
    )


def _summed_block(scheme: LevelScheme, F_row: HalfInt, F_col: HalfInt, l_row: PolVector, l_col: PolVector) -> np.ndarray:
    """Ground block of (l_row-projected) x (l_col-projected)^+ with the excited sums done analytically.

    One constructor serves the A_c, A and B blocks; they differ only in which
    ground components and polarizations are substituted.
    """
    I, J_a, J_b = scheme.I, scheme.J_a, scheme.J_b
    f = pol_tensor(l_row.conj(), l_col)

    a = {}
    for k in range(3):
        K = HalfInt(2 * k)
        electronic = wigner_6j(K, ONE, ONE, J_b, J_a, J_a)
        nuclear = wigner_6j(K, F_row, F_col, I, J_a, J_a)
        if electronic == 0.0 or nuclear == 0.0:
            continue
        b_k = math.sqrt(F_row.multiplicity * F_col.multiplicity) * nuclear
        sign = parity((F_col.twice_value - F_row.twice_value) + (I.twice_value + F_col.twice_value - J_b.twice_value))
        a[k] = sign * (2 * k + 1) * electronic * b_k

    rows = list(F_row.projections())
    cols = list(F_col.projections())
    out = np.zeros((len(rows), len(cols)), dtype=complex)
    if not a:
        return out
    for i, M1 in enumerate(rows):
        for j, M2 in enumerate(cols):
            tq = M2.twice_value - M1.twice_value
            if abs(tq) > 4:
                continue
            total = 0j
            for k, a_k in a.items():
                if abs(tq) > 2 * k:
                    continue
                threej = threej_twice(2 * k, F_row.twice_value, F_col.twice_value, tq, M1.twice_value, -M2.twice_value)
                if threej:
                    total += a_k * threej * f.get(k, tq // 2)
            sign = parity((F_row.twice_value - M1.twice_value) + tq)
            out[i, j] = sign * total
    return out


def ground_blocks(inp: RamanInput) -> dict[str, LabeledOperator]:
    """The analytically summed blocks A_c (F_a F_a), A (F'_a F'_a) and B (F_a F'_a)."""
    scheme, layout = inp.scheme, inp.layout
    fa, fpa = layout.labels_for(scheme.F_a), layout.labels_for(scheme.F_prime_a)
    return {
        "A_c": LabeledOperator(_summed_block(scheme, scheme.F_a, scheme.F_a, inp.l_c, inp.l_c), fa, fa),
        "A": LabeledOperator(_summed_block(scheme, scheme.F_prime_a, scheme.F_prime_a, inp.l, inp.l), fpa, fpa),
        "B": LabeledOperator(_summed_block(scheme, scheme.F_a, scheme.F_prime_a, inp.l_c, inp.l), fa, fpa),
    }


def qa_squared_summed(inp: RamanInput) -> LabeledOperator:
    """Q_a^2 = theta_c^2 A_c + theta^2 A + theta theta_c (B + B^+)."""
    blocks = ground_blocks(inp)
    tc, t = inp.theta_c, inp.theta
    B = blocks["B"].matrix
    return _ground_operator(
        inp.layout,
        tc ** 2 * blocks["A_c"].matrix,
        t * tc * B,
        t * tc * B.conj().T,
        t ** 2 * blocks["A"].matrix,
    )


def qb_squared(inp: RamanInput) -> LabeledOperator:
    """Q_b^2 = theta_c^2 p_c^+ p_c + theta^2 p^+ p on the excited manifold."""
    p_c, p = projected_dipoles(inp)
    return inp.theta_c ** 2 * (p_c.dagger() @ p_c) + inp.theta ** 2 * (p.dagger() @ p)


# --- matrix functions ---

def cos_sqrt(x: np.ndarray) -> np.ndarray:
    return np.cos(np.sqrt(x))


def sinc2_half(x: np.ndarray) -> np.ndarray:
    small = np.abs(x) < SMALL_ARGUMENT
    half = np.sqrt(np.where(small, 1.0, x)) / 2
    series = 1 - x / 12 + x ** 2 / 360 - x ** 3 / 20160
    return np.where(small, series, np.sin(half) ** 2 / np.where(small, 1.0, half ** 2))


def sinc_sqrt(x: np.ndarray) -> np.ndarray:
    small = np.abs(x) < SMALL_ARGUMENT
    root = np.sqrt(np.where(small, 1.0, x))
    series = 1 - x / 6 + x ** 2 / 120 - x ** 3 / 5040
    return np.where(small, series, np.sin(root) / root)


def psd_eigh(Q_squared: LabeledOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian PSD Q^2 with roundoff negatives clamped to 0."""
    residual = Q_squared.hermiticity_residual()
    if residual > config.HERMITICITY_TOLERANCE:
        raise MatrixFunctionError(f"Q^2 is not Hermitian (residual {residual:.3e})")
    vals, vecs = np.linalg.eigh(Q_squared.matrix)
    if vals.size and vals[0] < -config.NEGATIVE_EIGENVALUE_TOLERANCE:
        raise MatrixFunctionError(f"Q^2 has negative eigenvalue {vals[0]:.3e}")
    if vals.size and vals[0] < 0:
        logger.debug("Clamping eigenvalue %.3e of Q^2 to 0", vals[0])
    return np.clip(vals, 0.0, None), vecs


def _spectral(Q_squared: LabeledOperator, func: Callable[[np.ndarray], np.ndarray]) -> LabeledOperator:
    vals, vecs = psd_eigh(Q_squared)
    matrix = (vecs * func(vals)) @ vecs.conj().T
    return LabeledOperator(matrix, Q_squared.row_labels, Q_squared.col_labels)


def matrix_sinc2_half(Q_squared: LabeledOperator) -> LabeledOperator:
    """F = sin^2(Q/2) / (Q/2)^2 given Q^2."""
    return _spectral(Q_squared, sinc2_half)


def matrix_cos(Q_squared: LabeledOperator) -> LabeledOperator:
    """C = cos(Q) given Q^2."""
    return _spectral(Q_squared, cos_sqrt)


def matrix_sinc(Q_squared: LabeledOperator) -> LabeledOperator:
    """H = sin(Q) / Q given Q^2."""
    return _spectral(Q_squared, sinc_sqrt)


# --- probabilities ---

def _probability(R: LabeledOperator, F_a: HalfInt) -> float:
    return float(np.sum(np.abs(R.matrix) ** 2)) / F_a.multiplicity


def emission_probability(inp: RamanInput, check: bool = False) -> EmissionResult:
    """w = Tr(R R^+)/(2F_a+1) with R the F'_a <- F_a block of cos(Q_a).

    With check=True the summed-form and excited-route residuals are filled in.
    """
    qa2 = qa_squared_direct(inp)
    vals, vecs = psd_eigh(qa2)
    cos_qa = LabeledOperator((vecs * cos_sqrt(vals)) @ vecs.conj().T, qa2.row_labels, qa2.col_labels)
    w = _probability(cos_qa.block(LEVEL_FPA, LEVEL_FA), inp.scheme.F_a)

    summed_residual = qb_difference = None
    if check:
        summed_residual = (qa2 - qa_squared_summed(inp)).frobenius()
        qb_difference = abs(w - emission_probability_qb(inp))
    diagnostics = Diagnostics(
        qa_eigenvalues=tuple(float(v) for v in np.sqrt(vals)),
        hermiticity_residual=qa2.hermiticity_residual(),
        summed_residual=summed_residual,
        qb_route_difference=qb_difference,
    )
    return EmissionResult(w=w, diagnostics=diagnostics)


def emission_probability_qb(inp: RamanInput) -> float:
    """Same w through the excited manifold: R = (theta theta_c / 2) p F(Q_b) p_c^+."""
    p_c, p = projected_dipoles(inp)
    F = matrix_sinc2_half(qb_squared(inp))
    R = (inp.theta * inp.theta_c / 2) * (p @ F @ p_c.dagger())
    return _probability(R, inp.scheme.F_a)


def bridge_identity_check(inp: RamanInput, n: int) -> float:
    """|| theta theta_c p Q_b^(2n) p_c^+ - P_{F'_a} Q_a^(2(n+1)) P_{F_a} ||_F."""
    if n not in (0, 1, 2, 3):
        raise ValueError(f"n must be 0..3, got {n}")
    p_c, p = projected_dipoles(inp)
    qb2 = qb_squared(inp).matrix
    lhs = inp.theta * inp.theta_c * (p.matrix @ np.linalg.matrix_power(qb2, n) @ p_c.matrix.conj().T)
    qa2 = qa_squared_direct(inp)
    power = LabeledOperator(np.linalg.matrix_power(qa2.matrix, n + 1), qa2.row_labels, qa2.col_labels)
    rhs = power.block(LEVEL_FPA, LEVEL_FA).matrix
    return float(np.linalg.norm(lhs - rhs))
