"""Level schemes and the canonical basis ordering.

Ground basis: the F_a block (M ascending) followed by the F'_a block.
Excited basis: F_b ascending, M ascending inside each F_b block.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from values_main import MAX_TWICE_MOMENTUM, SCHEME_PRESETS
from .angular import HalfInt, HalfIntError, triangle_ok

logger = logging.getLogger(__name__)

LEVEL_FA = "Fa"
LEVEL_FPA = "Fpa"
LEVEL_B = "b"

ONE = HalfInt(2)


class SchemeError(ValueError):
    """Invalid level configuration."""


@dataclass(frozen=True)
class BasisLabel:
    level: str
    F: HalfInt
    M: HalfInt
    n_photon: int | None = None

    def __str__(self) -> str:
        text = f"{self.level}(F={self.F},M={self.M})"
        if self.n_photon is not None:
            text += f"|{self.n_photon}>"
        return text


@dataclass(frozen=True)
class LevelScheme:
    F_a: HalfInt
    F_prime_a: HalfInt
    I: HalfInt
    J_a: HalfInt
    J_b: HalfInt

    @classmethod
    def from_values(cls, F_a, F_prime_a, I, J_a, J_b) -> "LevelScheme":
        """Build from anything HalfInt.parse accepts ("5/2", 2.5, 2, ...)."""
        try:
            return cls(*(HalfInt.parse(v) for v in (F_a, F_prime_a, I, J_a, J_b)))
        except HalfIntError as e:
            raise SchemeError(str(e)) from None

    @classmethod
    def preset(cls, name: str) -> "LevelScheme":
        try:
            values = SCHEME_PRESETS[name.lower()]
        except KeyError:
            raise SchemeError(
                f"Unknown scheme preset: {name} (known: {', '.join(sorted(SCHEME_PRESETS))})"
            ) from None
        return cls.from_values(*values)

    def swapped(self) -> "LevelScheme":
        """Same atom with the laser- and cavity-coupled ground components exchanged."""
        return LevelScheme(self.F_prime_a, self.F_a, self.I, self.J_a, self.J_b)

    def ground_range(self) -> list[HalfInt]:
        return list(HalfInt.span(abs(self.J_a - self.I), self.J_a + self.I))

    def excited_range(self) -> list[HalfInt]:
        return list(HalfInt.span(abs(self.J_b - self.I), self.J_b + self.I))

    def __str__(self) -> str:
        return f"F_a={self.F_a} F'_a={self.F_prime_a} I={self.I} J_a={self.J_a} J_b={self.J_b}"


@dataclass(frozen=True)
class BasisLayout:
    scheme: LevelScheme
    F_b_values: tuple[HalfInt, ...]
    ground_labels: tuple[BasisLabel, ...]
    excited_labels: tuple[BasisLabel, ...]

    @property
    def ground_dim(self) -> int:
        return len(self.ground_labels)

    @property
    def excited_dim(self) -> int:
        return len(self.excited_labels)

    @property
    def atom_labels(self) -> tuple[BasisLabel, ...]:
        return self.ground_labels + self.excited_labels

    def ground_index(self, label: BasisLabel) -> int:
        return self._ground_index[label]

    def excited_index(self, label: BasisLabel) -> int:
        return self._excited_index[label]

    def labels_for(self, F: HalfInt) -> tuple[BasisLabel, ...]:
        """Ground labels of the F_a or F'_a block."""
        level = _ground_level(self.scheme, F)
        return tuple(lab for lab in self.ground_labels if lab.level == level)

    def __post_init__(self):
        object.__setattr__(self, "_ground_index", {lab: i for i, lab in enumerate(self.ground_labels)})
        object.__setattr__(self, "_excited_index", {lab: i for i, lab in enumerate(self.excited_labels)})


def _ground_level(scheme: LevelScheme, F: HalfInt) -> str:
    if F == scheme.F_a:
        return LEVEL_FA
    if F == scheme.F_prime_a:
        return LEVEL_FPA
    raise SchemeError(f"F={F} is neither F_a nor F'_a of {scheme}")


def _block(level: str, F: HalfInt) -> tuple[BasisLabel, ...]:
    return tuple(BasisLabel(level, F, M) for M in F.projections())


@lru_cache(maxsize=None)
def validate(scheme: LevelScheme) -> BasisLayout:
    """Check a level scheme and return its basis layout; raises SchemeError."""
    for name in ("I", "J_a", "J_b", "F_a", "F_prime_a"):
        if getattr(scheme, name).twice_value < 0:
            raise SchemeError(f"{name} must be non-negative in {scheme}")
    largest = max(scheme.J_a + scheme.I, scheme.J_b + scheme.I)
    if largest.twice_value > MAX_TWICE_MOMENTUM:
        raise SchemeError(
            f"hyperfine momenta up to F={largest} exceed the supported maximum {HalfInt(MAX_TWICE_MOMENTUM)}"
        )

    ground = scheme.ground_range()
    for name in ("F_a", "F_prime_a"):
        F = getattr(scheme, name)
        if F not in ground:
            allowed = ", ".join(str(g) for g in ground)
            raise SchemeError(f"{name}={F} outside the hyperfine range {{{allowed}}} of J_a={scheme.J_a}, I={scheme.I}")
    if scheme.F_a == scheme.F_prime_a:
        raise SchemeError(f"F_a and F'_a must differ, both are {scheme.F_a}")

    F_b_values = tuple(scheme.excited_range())
    if not F_b_values:
        raise SchemeError(f"no excited hyperfine components for J_b={scheme.J_b}, I={scheme.I}")

    if not triangle_ok(scheme.J_a, ONE, scheme.J_b):
        logger.warning("J_a=%s -> J_b=%s is not a dipole transition; scheme is dark", scheme.J_a, scheme.J_b)
    elif not any(
        triangle_ok(scheme.F_a, ONE, F_b) and triangle_ok(scheme.F_prime_a, ONE, F_b) for F_b in F_b_values
    ):
        logger.warning("No F_b couples to both F_a and F'_a in %s; emission probability is 0", scheme)

    ground_labels = _block(LEVEL_FA, scheme.F_a) + _block(LEVEL_FPA, scheme.F_prime_a)
    excited_labels = tuple(lab for F_b in F_b_values for lab in _block(LEVEL_B, F_b))
    return BasisLayout(scheme, F_b_values, ground_labels, excited_labels)
