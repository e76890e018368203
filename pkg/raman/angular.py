"""Half-integer angular momenta and Wigner 3j/6j symbols.

Symbols are evaluated with the Racah single-sum formulas on a log-factorial
table built once at import. Every momentum is carried as twice its value so
triangle and parity checks stay exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.special import gammaln

from values_main import MAX_TWICE_MOMENTUM


class HalfIntError(ValueError):
    """Malformed half-integer text, or a projection incompatible with its momentum."""


@dataclass(frozen=True, order=True)
class HalfInt:
    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, (int, np.integer)) or isinstance(self.twice_value, bool):
            raise HalfIntError(f"twice_value must be an integer, got {self.twice_value!r}")
        object.__setattr__(self, "twice_value", int(self.twice_value))

    @classmethod
    def parse(cls, text) -> "HalfInt":
        """Accept "3/2", "1.5", "2", or an int/float that is a multiple of 1/2."""
        if isinstance(text, HalfInt):
            return text
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise HalfIntError(f"not a half-integer: {text!r}") from None
        doubled = 2 * value
        if doubled.denominator != 1:
            raise HalfIntError(f"not a half-integer: {text!r}")
        return cls(int(doubled))

    @staticmethod
    def span(lo: "HalfInt", hi: "HalfInt") -> Iterator["HalfInt"]:
        """lo, lo+1, ..., hi (empty when hi < lo)."""
        for twice in range(lo.twice_value, hi.twice_value + 1, 2):
            yield HalfInt(twice)

    def projections(self) -> Iterator["HalfInt"]:
        """-j, -j+1, ..., j."""
        return HalfInt.span(-self, self)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    @property
    def multiplicity(self) -> int:
        """2j + 1."""
        return self.twice_value + 1

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice_value + other.twice_value)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice_value - other.twice_value)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice_value))

    def __float__(self) -> float:
        return self.twice_value / 2

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def parity(twice_exponent: int) -> int:
    """(-1)**x for x given doubled; x must be an integer."""
    if twice_exponent % 2:
        raise HalfIntError(f"phase exponent {twice_exponent}/2 is not an integer")
    return -1 if (twice_exponent // 2) % 2 else 1


# Eager table: log(n!) for n = 0..N, immutable after import
_LOG_FACTORIAL = gammaln(np.arange(2 * MAX_TWICE_MOMENTUM + 2, dtype=float) + 1.0)
_LOG_FACTORIAL.setflags(write=False)


def _logfact(n: int) -> float:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    if n >= len(_LOG_FACTORIAL):
        raise ValueError(f"momentum too large for factorial table: {n}!")
    return float(_LOG_FACTORIAL[n])


def _triangle_twice(a: int, b: int, c: int) -> bool:
    return abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0


def _log_delta(a: int, b: int, c: int) -> float:
    # log of the triangle coefficient, arguments doubled
    return 0.5 * (
        _logfact((a + b - c) // 2)
        + _logfact((a - b + c) // 2)
        + _logfact((-a + b + c) // 2)
        - _logfact((a + b + c) // 2 + 1)
    )


def triangle_ok(j1: HalfInt, j2: HalfInt, j3: HalfInt) -> bool:
    """|j1-j2| <= j3 <= j1+j2 with j1+j2+j3 an integer."""
    return _triangle_twice(j1.twice_value, j2.twice_value, j3.twice_value)


@lru_cache(maxsize=None)
def threej_twice(tj1: int, tj2: int, tj3: int, tm1: int, tm2: int, tm3: int) -> float:
    """3j symbol with every argument doubled."""
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if (tj - tm) % 2:
            raise HalfIntError(f"projection {tm}/2 does not match momentum {tj}/2")
    if tm1 + tm2 + tm3 != 0 or not _triangle_twice(tj1, tj2, tj3):
        return 0.0
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm3) > tj3:
        return 0.0

    t1 = (tj2 - tm1 - tj3) // 2
    t2 = (tj1 + tm2 - tj3) // 2
    t3 = (tj1 + tj2 - tj3) // 2
    t4 = (tj1 - tm1) // 2
    t5 = (tj2 + tm2) // 2
    tmin = max(0, t1, t2)
    tmax = min(t3, t4, t5)

    log_pref = _log_delta(tj1, tj2, tj3) + 0.5 * (
        _logfact((tj1 + tm1) // 2)
        + _logfact((tj1 - tm1) // 2)
        + _logfact((tj2 + tm2) // 2)
        + _logfact((tj2 - tm2) // 2)
        + _logfact((tj3 + tm3) // 2)
        + _logfact((tj3 - tm3) // 2)
    )
    total = 0.0
    for t in range(tmin, tmax + 1):
        log_den = (
            _logfact(t)
            + _logfact(t - t1)
            + _logfact(t - t2)
            + _logfact(t3 - t)
            + _logfact(t4 - t)
            + _logfact(t5 - t)
        )
        term = math.exp(log_pref - log_den)
        total += -term if t % 2 else term
    return parity(tj1 - tj2 - tm3) * total


@lru_cache(maxsize=None)
def sixj_twice(tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int) -> float:
    """6j symbol with every argument doubled."""
    triads = ((tj1, tj2, tj3), (tj1, tj5, tj6), (tj4, tj2, tj6), (tj4, tj5, tj3))
    if not all(_triangle_twice(*triad) for triad in triads):
        return 0.0

    a1 = (tj1 + tj2 + tj3) // 2
    a2 = (tj1 + tj5 + tj6) // 2
    a3 = (tj4 + tj2 + tj6) // 2
    a4 = (tj4 + tj5 + tj3) // 2
    b1 = (tj1 + tj2 + tj4 + tj5) // 2
    b2 = (tj2 + tj3 + tj5 + tj6) // 2
    b3 = (tj3 + tj1 + tj6 + tj4) // 2
    tmin = max(a1, a2, a3, a4)
    tmax = min(b1, b2, b3)

    log_pref = sum(_log_delta(*triad) for triad in triads)
    total = 0.0
    for t in range(tmin, tmax + 1):
        log_term = _logfact(t + 1) - (
            _logfact(t - a1)
            + _logfact(t - a2)
            + _logfact(t - a3)
            + _logfact(t - a4)
            + _logfact(b1 - t)
            + _logfact(b2 - t)
            + _logfact(b3 - t)
        )
        term = math.exp(log_pref + log_term)
        total += -term if t % 2 else term
    return total


def wigner_3j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> float:
    """Wigner 3j symbol (Condon-Shortley phases); exactly 0.0 when a selection rule fails."""
    return threej_twice(
        j1.twice_value, j2.twice_value, j3.twice_value,
        m1.twice_value, m2.twice_value, m3.twice_value,
    )


def wigner_6j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> float:
    """Wigner 6j symbol {j1 j2 j3; j4 j5 j6}; exactly 0.0 when any triad fails."""
    for j in (j1, j2, j3, j4, j5, j6):
        if j.twice_value < 0:
            raise HalfIntError(f"6j arguments must be non-negative, got {j}")
    return sixj_twice(
        j1.twice_value, j2.twice_value, j3.twice_value,
        j4.twice_value, j5.twice_value, j6.twice_value,
    )
