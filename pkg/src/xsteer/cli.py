"""Command-line front end for the sweep engine.

Exit codes: 0 success, 2 invalid configuration, 3 I/O failure,
4 internal consistency failure (dual-path disagreement inside a report).
"""

from __future__ import annotations

import argparse
import json
import sys

from .measures import PathDisagreementError
from .qstate import BellIndex
from .sweep import MODES, ConfigError, SweepConfig, run_sweep

_DEFAULT_GRIDS = {
    "nu": "0:1:201",
    "swap": "0:1:201",
    "acceleration": "0:0.7853981633974483:201",
    "ad-channel": "0:100:201",
    "dephasing-channel": "0:40:201",
}

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweep",
        description="Sweep steering (S) and entropy-squeezing (Z) measures over "
        "a state or process parameter, writing a CSV and a gnuplot script.",
    )
    parser.add_argument("--mode", choices=MODES, help="which parameter sweep to run")
    parser.add_argument("--grid", help="grid as start:stop:points (defaults per mode)")
    parser.add_argument("--nu", type=float, help="fixed mixing parameter (default 1.0)")
    parser.add_argument(
        "--rb", help="acceleration of qubit B: a number in [0, pi/4] or 'track' (default 0)"
    )
    parser.add_argument(
        "--g-over-gamma", type=float, dest="g_over_gamma",
        help="decay-rate ratio g/gamma for channel modes (default 0.1)",
    )
    parser.add_argument(
        "--bell", choices=[b.value for b in BellIndex],
        help="Bell outcome for swap mode (default psi)",
    )
    parser.add_argument("--out", help="output CSV path")
    parser.add_argument("--config", help="JSON config file; explicit flags win on conflict")
    parser.add_argument("--jobs", type=int, help="parallel workers (default 1)")
    return parser


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:points, got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"grid must be start:stop:points, got {text!r}") from exc
    return start, stop, points


def _parse_rb(value) -> float | str:
    if isinstance(value, (int, float)):
        return float(value)
    if value == "track":
        return "track"
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigError(f"rb must be a number or 'track', got {value!r}") from exc


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config: {path} must hold a JSON object")
    known = {"mode", "grid", "nu", "rb", "g_over_gamma", "bell", "out", "jobs"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"config: unknown keys {sorted(unknown)}")
    return data


def _build_config(args: argparse.Namespace) -> SweepConfig:
    file_values = _load_config_file(args.config) if args.config else {}

    def pick(flag_value, key, default=None):
        if flag_value is not None:
            return flag_value
        return file_values.get(key, default)

    mode = pick(args.mode, "mode")
    if mode is None:
        raise ConfigError("mode: required (flag --mode or config key 'mode')")
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
    out = pick(args.out, "out")
    if out is None:
        raise ConfigError("out: required (flag --out or config key 'out')")
    grid = pick(args.grid, "grid", _DEFAULT_GRIDS[mode])
    start, stop, points = _parse_grid(str(grid))
    bell_name = pick(args.bell, "bell", BellIndex.PSI_PLUS.value)
    try:
        bell = BellIndex(bell_name)
    except ValueError as exc:
        raise ConfigError(f"bell must be one of {[b.value for b in BellIndex]}") from exc
    cfg = SweepConfig(
        mode=mode,
        start=start,
        stop=stop,
        points=points,
        out=str(out),
        nu=float(pick(args.nu, "nu", 1.0)),
        r_b=_parse_rb(pick(args.rb, "rb", 0.0)),
        g_over_gamma=float(pick(args.g_over_gamma, "g_over_gamma", 0.1)),
        bell=bell,
        jobs=int(pick(args.jobs, "jobs", 1)),
    )
    return cfg.validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args)
    except ConfigError as exc:
        print(f"sweep: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        records = run_sweep(cfg)
    except ConfigError as exc:
        print(f"sweep: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"sweep: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except PathDisagreementError as exc:
        print(f"sweep: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(f"wrote {cfg.out} ({len(records)} rows) and companion .gnuplot script")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
