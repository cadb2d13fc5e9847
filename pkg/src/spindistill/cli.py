"""Command-line entry points.

Four subcommands: ``point`` evaluates one parameter set and prints a JSON
record, ``sweep`` writes a grid to CSV or JSON, ``crossover`` searches for
the squeezing strength where heralding stops helping, and ``selftest``
replays the brute-force cross-check on a small lattice.

Settings resolve in priority order: command-line flag, then config file
(plain ``key = value`` lines, ``#`` comments), then built-in default.
Exit codes: 0 on success, 2 for usage or domain errors, 1 for I/O problems
and selftest failures.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .oracle import oracle_conditional_state
from .losses import DetectorModel, condition_on_clicks_lossy
from .states import apply_effective_beamsplitter, build_tmss
from .sweep import (
    CONVERGENCE_WARN,
    SweepSpec,
    evaluate_point,
    find_crossover,
    run_sweep,
    write_rows,
)

__all__ = ["main", "build_parser", "load_config"]


def load_config(path: str) -> dict[str, str]:
    """Read a flat ``key = value`` config file into a string map."""
    cfg: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ValueError(
                    f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}"
                )
            cfg[key.strip().lower().replace("-", "_")] = value.strip()
    return cfg


def _float_list(text: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"empty value list: {text!r}")
    return tuple(float(p) for p in parts)


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _setting(flag_value, cfg: dict[str, str], key: str, cast, default):
    if flag_value is not None:
        return flag_value
    if key in cfg:
        try:
            return cast(cfg[key])
        except ValueError as exc:
            raise ValueError(f"config key {key!r}: {exc}") from exc
    return default


def _load_cfg(args) -> dict[str, str]:
    return load_config(args.config) if args.config else {}


def _require(value, name: str):
    if value is None:
        raise ValueError(f"{name} is required (pass a flag or set it in the config file)")
    return value


def cmd_point(args) -> int:
    cfg = _load_cfg(args)
    lam = _require(_setting(args.lam, cfg, "lambda", float, None), "lambda")
    phi = _require(_setting(args.phi, cfg, "phi", float, None), "phi")
    eta = _setting(args.eta, cfg, "eta", float, 1.0)
    n_max = _setting(args.nmax, cfg, "nmax", int, 100)
    timing = args.timing or _setting(None, cfg, "timing", _bool, False)
    row = evaluate_point(lam, phi, eta, n_max, timing=timing)
    print(json.dumps(row.as_dict(), indent=2))
    if row.convergence_delta is not None and row.convergence_delta > CONVERGENCE_WARN:
        print(
            f"warning: convergence delta {row.convergence_delta:.3e} exceeds "
            f"{CONVERGENCE_WARN:.0e}; the truncation at n_max = {n_max} is not settled",
            file=sys.stderr,
        )
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_cfg(args)
    spec = SweepSpec(
        lambda_min=_setting(args.lambda_min, cfg, "lambda_min", float, 0.05),
        lambda_max=_setting(args.lambda_max, cfg, "lambda_max", float, 0.95),
        lambda_steps=_setting(args.lambda_steps, cfg, "lambda_steps", int, 19),
        phi_values=tuple(args.phi) if args.phi else _setting(None, cfg, "phi", _float_list, (0.1,)),
        eta_values=tuple(args.eta) if args.eta else _setting(None, cfg, "eta", _float_list, (1.0,)),
        n_max=_setting(args.nmax, cfg, "nmax", int, 100),
        include_tmss_baseline=not args.no_tmss_baseline
        and _setting(None, cfg, "tmss_baseline", _bool, True),
    )
    out = _require(_setting(args.out, cfg, "out", str, None), "out")
    fmt = _setting(args.format, cfg, "format", str, "csv")
    timing = args.timing or _setting(None, cfg, "timing", _bool, False)
    rows = run_sweep(spec, timing=timing)
    write_rows(rows, out, fmt)
    print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)
    return 0


def cmd_crossover(args) -> int:
    cfg = _load_cfg(args)
    phi = _require(_setting(args.phi, cfg, "phi", float, None), "phi")
    eta = _setting(args.eta, cfg, "eta", float, 1.0)
    n_max = _setting(args.nmax, cfg, "nmax", int, 100)
    result = find_crossover(phi, eta, n_max=n_max)
    payload = {
        "phi": result.phi,
        "eta": result.eta,
        "n_max": result.n_max,
        "found": result.found,
        "lambda_star": result.lambda_star,
        "bracket": list(result.bracket) if result.bracket else None,
        "gain_at_bracket": list(result.gain_at_bracket) if result.gain_at_bracket else None,
    }
    print(json.dumps(payload, indent=2))
    if not result.found:
        print("no crossover inside the scanned lambda range", file=sys.stderr)
    return 0


_SELFTEST_GRID = {
    "lam": (0.2, 0.5, 0.8),
    "phi": (0.05, 0.1, 0.3),
    "eta": (0.2, 0.5, 1.0),
}


def cmd_selftest(args) -> int:
    cfg = _load_cfg(args)
    n_max = _setting(args.nmax, cfg, "nmax", int, 3)
    worst = 0.0
    failures = 0
    for lam in _SELFTEST_GRID["lam"]:
        for phi in _SELFTEST_GRID["phi"]:
            for eta in _SELFTEST_GRID["eta"]:
                table = apply_effective_beamsplitter(build_tmss(lam, n_max), phi)
                fast = condition_on_clicks_lossy(table, DetectorModel(eta))
                slow = oracle_conditional_state(lam, phi, eta, n_max)
                diff = max(
                    float(np.max(np.abs(a - b)))
                    for a, b in zip(fast.sectors, slow.sectors)
                )
                worst = max(worst, diff)
                status = "ok" if diff <= 1e-12 else "FAIL"
                if status == "FAIL":
                    failures += 1
                print(
                    f"{status}  lam={lam} phi={phi} eta={eta}  max|diff|={diff:.3e}"
                )
    points = 27
    if failures:
        print(f"selftest FAILED: {failures} of {points} points off", file=sys.stderr)
        return 1
    print(f"selftest passed: {points} points, worst entry deviation {worst:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spindistill",
        description="Heralded entanglement concentration between two atomic ensembles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate a single parameter point")
    point.add_argument("--lambda", dest="lam", type=float, help="squeezing parameter in [0, 1)")
    point.add_argument("--phi", type=float, help="atom-light transfer amplitude in [0, 1)")
    point.add_argument("--eta", type=float, help="detector efficiency in [0, 1]")
    point.add_argument("--nmax", type=int, help="Fock-space cutoff per mode")
    point.add_argument("--config", help="key = value settings file")
    point.add_argument("--timing", action="store_true", help="record wall-clock time")
    point.set_defaults(func=cmd_point)

    sweep = sub.add_parser("sweep", help="evaluate a parameter grid and write it out")
    sweep.add_argument("--lambda-min", dest="lambda_min", type=float)
    sweep.add_argument("--lambda-max", dest="lambda_max", type=float)
    sweep.add_argument("--lambda-steps", dest="lambda_steps", type=int)
    sweep.add_argument("--phi", type=float, action="append", help="repeatable")
    sweep.add_argument("--eta", type=float, action="append", help="repeatable")
    sweep.add_argument("--nmax", type=int)
    sweep.add_argument("--out", help="output file path")
    sweep.add_argument("--format", choices=("csv", "json"))
    sweep.add_argument("--config", help="key = value settings file")
    sweep.add_argument("--timing", action="store_true", help="record wall-clock times")
    sweep.add_argument(
        "--no-tmss-baseline",
        action="store_true",
        help="leave the untruncated baseline column empty",
    )
    sweep.set_defaults(func=cmd_sweep)

    crossover = sub.add_parser(
        "crossover", help="find where the heralded state stops beating the input"
    )
    crossover.add_argument("--phi", type=float)
    crossover.add_argument("--eta", type=float)
    crossover.add_argument("--nmax", type=int)
    crossover.add_argument("--config", help="key = value settings file")
    crossover.set_defaults(func=cmd_crossover)

    selftest = sub.add_parser(
        "selftest", help="cross-check the fast pipeline against the dense lattice"
    )
    selftest.add_argument("--nmax", type=int, help="lattice cutoff, at most 6")
    selftest.add_argument("--config", help="key = value settings file")
    selftest.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
