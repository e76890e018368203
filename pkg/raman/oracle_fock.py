"""Brute-force reference on the truncated atom x Fock space.

Index of (atom state i, photon number n) is i * (n_max + 1) + n, with atom
states ordered ground (F_a, F'_a) then excited as in the basis layout.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .dipole import LabeledOperator
from .kernel import RamanInput, cos_sqrt, sinc2_half, sinc_sqrt, projected_dipoles, psd_eigh
from .scheme import LEVEL_B, LEVEL_FA, BasisLabel, BasisLayout

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FockBasis:
    labels: tuple[BasisLabel, ...]
    n_max: int

    @classmethod
    def for_layout(cls, layout: BasisLayout, n_max: int) -> "FockBasis":
        if n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {n_max}")
        labels = tuple(
            BasisLabel(lab.level, lab.F, lab.M, n)
            for lab in layout.atom_labels
            for n in range(n_max + 1)
        )
        return cls(labels, n_max)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mask(self, level: str | None = None, n_photon: int | None = None) -> np.ndarray:
        return np.array([
            (level is None or lab.level == level) and (n_photon is None or lab.n_photon == n_photon)
            for lab in self.labels
        ])


def _creation(n_max: int) -> np.ndarray:
    adag = np.zeros((n_max + 1, n_max + 1))
    for n in range(n_max):
        adag[n + 1, n] = np.sqrt(n + 1)
    return adag


def _atom_operators(inp: RamanInput) -> tuple[np.ndarray, np.ndarray]:
    """p_c and p embedded in the full atom space (ground rows, excited columns)."""
    layout = inp.layout
    p_c, p = projected_dipoles(inp)
    dim = layout.ground_dim + layout.excited_dim
    n_fa = inp.scheme.F_a.multiplicity
    full_c = np.zeros((dim, dim), dtype=complex)
    full = np.zeros((dim, dim), dtype=complex)
    full_c[:n_fa, layout.ground_dim:] = p_c.matrix
    full[n_fa:layout.ground_dim, layout.ground_dim:] = p.matrix
    return full_c, full


def _g_operator(inp: RamanInput, n_max: int) -> np.ndarray:
    # G = theta_c p_c - i theta a^+ p
    full_c, full = _atom_operators(inp)
    eye = np.eye(n_max + 1)
    return inp.theta_c * np.kron(full_c, eye) - 1j * inp.theta * np.kron(full, _creation(n_max))


def build_generator(inp: RamanInput, n_max: int = 1) -> LabeledOperator:
    """G + G^+ on the truncated basis."""
    basis = FockBasis.for_layout(inp.layout, n_max)
    G = _g_operator(inp, n_max)
    return LabeledOperator(G + G.conj().T, basis.labels, basis.labels)


def evolution_operator(inp: RamanInput, n_max: int = 1) -> LabeledOperator:
    """S = exp(i (G + G^+)) via eigen-decomposition of the Hermitian generator."""
    gen = build_generator(inp, n_max)
    vals, vecs = np.linalg.eigh(gen.matrix)
    return LabeledOperator((vecs * np.exp(1j * vals)) @ vecs.conj().T, gen.row_labels, gen.col_labels)


def initial_density(inp: RamanInput, n_max: int = 1) -> np.ndarray:
    """P_{F_a} / (2F_a+1) with the cavity in vacuum."""
    basis = FockBasis.for_layout(inp.layout, n_max)
    occupied = basis.mask(LEVEL_FA, 0)
    return np.diag(occupied.astype(float) / inp.scheme.F_a.multiplicity).astype(complex)


def evolve_density(inp: RamanInput, n_max: int = 1) -> np.ndarray:
    S = evolution_operator(inp, n_max).matrix
    return S @ initial_density(inp, n_max) @ S.conj().T


def photon_populations(inp: RamanInput, n_max: int = 1) -> np.ndarray:
    """Tr_atom <n|rho|n> for n = 0..n_max after the pulse."""
    rho = evolve_density(inp, n_max)
    basis = FockBasis.for_layout(inp.layout, n_max)
    diag = np.real(np.diag(rho))
    return np.array([diag[basis.mask(n_photon=n)].sum() for n in range(n_max + 1)])


def evolve_and_measure(inp: RamanInput, n_max: int = 1) -> float:
    """w = Tr <1|rho|1>."""
    w = float(photon_populations(inp, n_max)[1])
    logger.debug("Fock oracle (n_max=%d): w=%.12f", n_max, w)
    return w


def _excited_function(q2: np.ndarray, excited: np.ndarray, func, labels) -> np.ndarray:
    # Apply func(Q^2) on the excited x Fock subspace, zero elsewhere
    idx = np.flatnonzero(excited)
    sub = LabeledOperator(q2[np.ix_(idx, idx)], [labels[i] for i in idx], [labels[i] for i in idx])
    vals, vecs = psd_eigh(sub)
    out = np.zeros_like(q2)
    out[np.ix_(idx, idx)] = (vecs * func(vals)) @ vecs.conj().T
    return out


def closed_form_s(inp: RamanInput, n_max: int = 1) -> LabeledOperator:
    """S = P_{F_a} + P_{F'_a} + C - G F G^+ / 2 + i G H + i H G^+.

    C, H, F are cos(Q), sin(Q)/Q and sin^2(Q/2)/(Q/2)^2 of
    Q^2 = theta_c^2 p_c^+ p_c + theta^2 a a^+ p^+ p, acting on excited states.
    """
    basis = FockBasis.for_layout(inp.layout, n_max)
    full_c, full = _atom_operators(inp)
    adag = _creation(n_max)
    eye = np.eye(n_max + 1)
    # truncated a a^+ = diag(1, ..., n_max, 0)
    q2 = (
        inp.theta_c ** 2 * np.kron(full_c.conj().T @ full_c, eye)
        + inp.theta ** 2 * np.kron(full.conj().T @ full, adag.T @ adag)
    )
    excited = basis.mask(LEVEL_B)
    C = _excited_function(q2, excited, cos_sqrt, basis.labels)
    H = _excited_function(q2, excited, sinc_sqrt, basis.labels)
    F = _excited_function(q2, excited, sinc2_half, basis.labels)

    G = _g_operator(inp, n_max)
    Gd = G.conj().T
    ground = np.diag((~excited).astype(complex))
    S = ground + C - 0.5 * G @ F @ Gd + 1j * G @ H + 1j * H @ Gd
    return LabeledOperator(S, basis.labels, basis.labels)


def generator_power_identity_residual(inp: RamanInput, n: int, n_max: int = 1) -> float:
    """|| (G+G^+)^(2n) - Q^(2n) - G Q^(2(n-1)) G^+ || for n >= 1."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    G = _g_operator(inp, n_max)
    Gd = G.conj().T
    q2 = Gd @ G
    lhs = np.linalg.matrix_power(G + Gd, 2 * n)
    rhs = np.linalg.matrix_power(q2, n) + G @ np.linalg.matrix_power(q2, n - 1) @ Gd
    return float(np.linalg.norm(lhs - rhs))
