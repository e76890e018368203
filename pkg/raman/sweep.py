"""Sweeps over theta or psi, the theta/psi optimizer, and CSV/JSON writers."""
from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Iterator, Sequence, TextIO

import numpy as np

import config
from values_main import CSV_HEADER
from .kernel import RamanInput, emission_probability
from .oracle_fock import evolve_and_measure
from .polarization import linear_pair
from .scheme import LevelScheme

logger = logging.getLogger(__name__)

GOLDEN = (1 + math.sqrt(5)) / 2


class OracleMismatchError(ValueError):
    """Kernel and Fock-space oracle disagree beyond the configured tolerance."""


@dataclass(frozen=True)
class SweepRecord:
    theta: float
    theta_c: float
    psi_deg: float
    w: float
    oracle_w: float | None = None

    @property
    def oracle_diff(self) -> float | None:
        if self.oracle_w is None:
            return None
        return abs(self.w - self.oracle_w)


@dataclass(frozen=True)
class OptimumReport:
    axis: str
    theta_star: float
    w_star: float
    grid_step: float
    refinement_tolerance: float


def make_input(scheme: LevelScheme, theta: float, theta_c: float, psi_deg: float) -> RamanInput:
    l_c, l = linear_pair(math.radians(psi_deg))
    return RamanInput(scheme, theta_c=theta_c, theta=theta, l_c=l_c, l=l)


def evaluate(
    scheme: LevelScheme,
    theta: float,
    theta_c: float,
    psi_deg: float,
    oracle: bool = False,
    reverse: bool = False,
) -> SweepRecord:
    """One record; reverse evaluates the swapped scheme (F_a <-> F'_a, theta <-> theta_c, l <-> l_c)."""
    inp = make_input(scheme, theta, theta_c, psi_deg)
    if reverse:
        inp = inp.swapped()
    w = emission_probability(inp).w
    oracle_w = evolve_and_measure(inp, config.ORACLE_N_MAX) if oracle else None
    return SweepRecord(theta=theta, theta_c=theta_c, psi_deg=psi_deg, w=w, oracle_w=oracle_w)


def grid(lo: float, hi: float, step: float) -> list[float]:
    """lo, lo+step, ... up to hi inclusive (within step/1e6)."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"range maximum {hi} is below minimum {lo}")
    count = int(math.floor((hi - lo) / step + 1e-6))
    return [lo + i * step for i in range(count + 1)]


def _ordered_map(func: Callable[[float], SweepRecord], points: Sequence[float], workers: int) -> Iterator[SweepRecord]:
    if workers <= 1:
        return map(func, points)
    # Executor.map yields in submission order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return iter(list(pool.map(func, points)))


def sweep(
    scheme: LevelScheme,
    axis: str,
    lo: float,
    hi: float,
    step: float,
    theta: float = 0.0,
    theta_c: float = 0.0,
    psi_deg: float = 90.0,
    lock_areas: bool = False,
    oracle: bool = False,
    workers: int | None = None,
) -> Iterator[SweepRecord]:
    """Records along theta or psi (degrees), in axis order."""
    points = grid(lo, hi, step)
    workers = config.SWEEP_WORKERS if workers is None else workers
    logger.info("Sweeping %s over %d points for %s", axis, len(points), scheme)

    if axis == "theta":
        def point(x: float) -> SweepRecord:
            return evaluate(scheme, x, x if lock_areas else theta_c, psi_deg, oracle)
    elif axis == "psi":
        def point(x: float) -> SweepRecord:
            return evaluate(scheme, theta, theta_c, x, oracle)
    else:
        raise ValueError(f"Unknown sweep axis: {axis}")
    return _ordered_map(point, points, workers)


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Maximizer of a unimodal f on [a, b] to within tol."""
    c = b - (b - a) / GOLDEN
    d = a + (b - a) / GOLDEN
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - (b - a) / GOLDEN
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) / GOLDEN
            fd = f(d)
    return (a + b) / 2


def optimize(
    scheme: LevelScheme,
    lo: float,
    hi: float,
    axis: str = "theta",
    psi_deg: float = 90.0,
    theta: float | None = None,
    theta_c: float | None = None,
    grid_step: float | None = None,
    tol: float | None = None,
) -> OptimumReport:
    """Coarse grid scan then golden-section refinement around the best grid point.

    On the theta axis theta_c follows theta unless theta_c is given; on the
    psi axis both angles are fixed and the range is in degrees.
    """
    grid_step = config.OPTIMIZE_GRID_STEP if grid_step is None else grid_step
    tol = config.OPTIMIZE_TOLERANCE if tol is None else tol

    if axis == "theta":
        def w_at(x: float) -> float:
            inp = make_input(scheme, x, x if theta_c is None else theta_c, psi_deg)
            return emission_probability(inp).w
    elif axis == "psi":
        if theta is None or theta_c is None:
            raise ValueError("psi optimization needs both theta and theta_c")

        def w_at(x: float) -> float:
            return emission_probability(make_input(scheme, theta, theta_c, x)).w
    else:
        raise ValueError(f"Unknown optimization axis: {axis}")

    if hi == lo:
        return OptimumReport(axis, lo, w_at(lo), grid_step, tol)

    points = grid(lo, hi, grid_step)
    if points[-1] < hi:
        points.append(hi)
    values = np.array([w_at(x) for x in points])
    best = int(np.argmax(values))
    a = points[max(best - 1, 0)]
    b = points[min(best + 1, len(points) - 1)]
    logger.info("Best grid point %s=%.4f (w=%.6f); refining on [%.4f, %.4f]", axis, points[best], values[best], a, b)

    x_star = golden_section_max(w_at, a, b, tol)
    w_star = w_at(x_star)
    if w_star < values[best]:
        # refinement landed below the grid point (flat or edge bracket)
        x_star, w_star = points[best], float(values[best])
    logger.info("Optimum %s*=%.6f w*=%.6f", axis, x_star, w_star)
    return OptimumReport(axis, x_star, w_star, grid_step, tol)


def check_oracle(records: Iterable[SweepRecord], tolerance: float | None = None) -> list[SweepRecord]:
    """Materialize records, raising OracleMismatchError on the first disagreement."""
    tolerance = config.ORACLE_TOLERANCE if tolerance is None else tolerance
    out = []
    for rec in records:
        if rec.oracle_diff is not None and rec.oracle_diff > tolerance:
            logger.error("Oracle disagreement %.3e at theta=%s theta_c=%s psi=%s", rec.oracle_diff, rec.theta, rec.theta_c, rec.psi_deg)
            raise OracleMismatchError(
                f"kernel w={rec.w:.12f} vs oracle w={rec.oracle_w:.12f} (diff {rec.oracle_diff:.3e} > {tolerance:.1e})"
            )
        out.append(rec)
    return out


def _fmt(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


def write_csv(records: Iterable[SweepRecord], out: TextIO, digits: int | None = None) -> None:
    digits = config.FLOAT_DIGITS if digits is None else digits
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(getattr(rec, name), digits) for name in CSV_HEADER])


def write_json(records: Iterable[SweepRecord], out: TextIO) -> None:
    payload = []
    for rec in records:
        item = {name: getattr(rec, name) for name in CSV_HEADER}
        if rec.oracle_w is not None:
            item["oracle_w"] = rec.oracle_w
            item["oracle_diff"] = rec.oracle_diff
        payload.append(item)
    json.dump(payload, out, indent=2)
    out.write("\n")


def write_report(report: OptimumReport, out: TextIO, fmt: str, digits: int | None = None) -> None:
    digits = config.FLOAT_DIGITS if digits is None else digits
    data = asdict(report)
    if fmt == "json":
        json.dump(data, out, indent=2)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(data))
    writer.writerow([v if isinstance(v, str) else _fmt(v, digits) for v in data.values()])
