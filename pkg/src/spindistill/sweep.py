"""Parameter sweeps, output writers, and the crossover search.

A sweep evaluates the heralded-state pipeline over a grid in (lambda, phi,
eta) and writes rows with a fixed column set.  Output is deterministic by
default: wall-clock timing is opt-in precisely so that repeated runs produce
byte-identical files.
"""
from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass

import numpy as np

from .losses import DetectorModel, condition_on_clicks_lossy, success_probability_lossy
from .negativity import (
    EntanglementReport,
    negativity,
    partial_transpose_blocks,
    tmss_negativity_closed,
)
from .states import apply_effective_beamsplitter, build_tmss

__all__ = [
    "CSV_COLUMNS",
    "SweepSpec",
    "SweepRow",
    "CrossoverResult",
    "log_negativity_pipeline",
    "evaluate_point",
    "run_sweep",
    "render_csv",
    "render_json",
    "write_rows",
    "find_crossover",
]

CSV_COLUMNS = (
    "lambda",
    "phi",
    "eta",
    "S",
    "E_N_out",
    "E_N_tmss",
    "negativity",
    "n_max",
    "convergence_delta",
    "wall_time_ms",
)

CONVERGENCE_WARN = 1e-6


@dataclass(frozen=True)
class SweepSpec:
    """Grid description for one sweep run."""

    lambda_min: float
    lambda_max: float
    lambda_steps: int
    phi_values: tuple[float, ...]
    eta_values: tuple[float, ...]
    n_max: int = 100
    include_tmss_baseline: bool = True

    def __post_init__(self):
        if not 0.0 <= self.lambda_min < 1.0 or not 0.0 <= self.lambda_max < 1.0:
            raise ValueError("lambda bounds must lie in [0, 1)")
        if self.lambda_max < self.lambda_min:
            raise ValueError(
                f"lambda_max {self.lambda_max} is below lambda_min {self.lambda_min}"
            )
        if self.lambda_steps < 1:
            raise ValueError(f"lambda_steps must be positive, got {self.lambda_steps}")
        if self.lambda_steps == 1 and self.lambda_max != self.lambda_min:
            raise ValueError("a single-step sweep needs lambda_min == lambda_max")
        if not self.phi_values:
            raise ValueError("at least one phi value is required")
        if not self.eta_values:
            raise ValueError("at least one eta value is required")
        for phi in self.phi_values:
            if not 0.0 <= phi < 1.0:
                raise ValueError(f"phi must lie in [0, 1), got {phi!r}")
        for eta in self.eta_values:
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
        if self.n_max < 2:
            raise ValueError(f"n_max must be at least 2, got {self.n_max}")

    def lambda_grid(self) -> np.ndarray:
        return np.linspace(self.lambda_min, self.lambda_max, self.lambda_steps)


@dataclass
class SweepRow:
    """One evaluated grid point, matching the output columns one-to-one."""

    lam: float
    phi: float
    eta: float
    S: float
    E_N_out: float | None
    E_N_tmss: float | None
    negativity: float | None
    n_max: int
    convergence_delta: float | None
    wall_time_ms: float = 0.0

    def as_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "phi": self.phi,
            "eta": self.eta,
            "S": self.S,
            "E_N_out": self.E_N_out,
            "E_N_tmss": self.E_N_tmss,
            "negativity": self.negativity,
            "n_max": self.n_max,
            "convergence_delta": self.convergence_delta,
            "wall_time_ms": self.wall_time_ms,
        }


def log_negativity_pipeline(lam: float, phi: float, eta: float, n_max: int) -> EntanglementReport:
    """Entanglement of the normalized heralded state at one parameter point."""
    tmss = build_tmss(lam, n_max)
    table = apply_effective_beamsplitter(tmss, phi)
    state = condition_on_clicks_lossy(table, DetectorModel(eta))
    blocks = partial_transpose_blocks(state.normalize())
    return negativity(blocks)


def evaluate_point(
    lam: float,
    phi: float,
    eta: float,
    n_max: int,
    with_convergence: bool = True,
    with_baseline: bool = True,
    timing: bool = False,
) -> SweepRow:
    """Evaluate one grid point.

    Zero success probability (any of lambda, phi, eta exactly zero) leaves
    no state to condition on, so the entanglement columns are emitted as
    nulls rather than fabricated zeros.
    """
    start = time.monotonic() if timing else 0.0
    S = success_probability_lossy(lam, phi, eta)
    baseline = tmss_negativity_closed(lam)[1] if with_baseline else None
    if S == 0.0:
        out = neg = delta = None
    else:
        report = log_negativity_pipeline(lam, phi, eta, n_max)
        out = report.log_negativity
        neg = report.negativity
        if with_convergence:
            coarse = log_negativity_pipeline(lam, phi, eta, n_max // 2)
            delta = abs(report.log_negativity - coarse.log_negativity)
        else:
            delta = None
    wall = (time.monotonic() - start) * 1e3 if timing else 0.0
    return SweepRow(
        lam=lam,
        phi=phi,
        eta=eta,
        S=S,
        E_N_out=out,
        E_N_tmss=baseline,
        negativity=neg,
        n_max=n_max,
        convergence_delta=delta,
        wall_time_ms=wall,
    )


def run_sweep(spec: SweepSpec, timing: bool = False) -> list[SweepRow]:
    """Evaluate the full grid, lambda outermost, then phi, then eta."""
    rows = []
    for lam in spec.lambda_grid():
        for phi in spec.phi_values:
            for eta in spec.eta_values:
                rows.append(
                    evaluate_point(
                        float(lam),
                        phi,
                        eta,
                        spec.n_max,
                        with_baseline=spec.include_tmss_baseline,
                        timing=timing,
                    )
                )
    return rows


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12e}"
    return str(value)


def render_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        d = row.as_dict()
        lines.append(",".join(_csv_cell(d[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_json(rows: list[SweepRow]) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=2) + "\n"


def write_rows(rows: list[SweepRow], path: str, fmt: str = "csv") -> None:
    """Write rows atomically: a partial file never lands at ``path``."""
    if fmt == "csv":
        text = render_csv(rows)
    elif fmt == "json":
        text = render_json(rows)
    else:
        raise ValueError(f"unknown output format {fmt!r}; use 'csv' or 'json'")
    tmp = path + ".part"
    try:
        with open(tmp, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass(frozen=True)
class CrossoverResult:
    """Outcome of the search for where heralding stops paying off."""

    found: bool
    phi: float
    eta: float
    n_max: int
    lambda_star: float | None = None
    bracket: tuple[float, float] | None = None
    gain_at_bracket: tuple[float, float] | None = None


def find_crossover(
    phi: float,
    eta: float,
    n_max: int = 100,
    lambda_lo: float = 0.01,
    lambda_hi: float = 0.99,
    tol: float = 1e-3,
    coarse_steps: int = 25,
) -> CrossoverResult:
    """Locate the squeezing strength where the heralded state stops beating
    the bare two-mode squeezed state.

    The gain E_out - E_tmss is scanned on a coarse grid; the last bracket
    where it changes sign from positive to negative is refined by bisection
    to width ``tol``.  No sign change means no crossover in range, which is
    reported as such rather than treated as an error.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    if not 0.0 < lambda_lo < lambda_hi < 1.0:
        raise ValueError(
            f"need 0 < lambda_lo < lambda_hi < 1, got ({lambda_lo!r}, {lambda_hi!r})"
        )

    def gain(lam: float) -> float | None:
        if success_probability_lossy(lam, phi, eta) == 0.0:
            return None
        report = log_negativity_pipeline(lam, phi, eta, n_max)
        return report.log_negativity - tmss_negativity_closed(lam)[1]

    grid = np.linspace(lambda_lo, lambda_hi, coarse_steps)
    values = [gain(float(lam)) for lam in grid]
    bracket = None
    for i in range(len(grid) - 1):
        g_lo, g_hi = values[i], values[i + 1]
        if g_lo is None or g_hi is None:
            continue
        if g_lo > 0.0 and g_hi <= 0.0:
            bracket = (float(grid[i]), float(grid[i + 1]), g_lo, g_hi)
    if bracket is None:
        return CrossoverResult(found=False, phi=phi, eta=eta, n_max=n_max)

    lo, hi, g_lo, g_hi = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = gain(mid)
        if g_mid is None:
            break
        if g_mid > 0.0:
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    return CrossoverResult(
        found=True,
        phi=phi,
        eta=eta,
        n_max=n_max,
        lambda_star=0.5 * (lo + hi),
        bracket=(lo, hi),
        gain_at_bracket=(g_lo, g_hi),
    )
