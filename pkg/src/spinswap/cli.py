"""Command-line front end: phase-table, verify-all, and tilted reports.

Reports are deterministic for a fixed (seed, config) and can be emitted as
text, JSON, or CSV carrying identical numeric values.  The process exits 0
only when every check in the invoked command passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import verify
from .exchange import exchange_phase
from .spin_algebra import make_spin
from .tilted import theta_l, tilted_gram, verify_tilt_transfer

__all__ = ["RunConfig", "cmd_phase_table", "cmd_verify_all", "cmd_tilted", "main"]

COMMANDS = ("phase-table", "verify-all", "tilted")
FORMATS = ("json", "csv", "text")

TWICE_SPIN_CAP = 16
COMPLETENESS_FLOOR = verify.COMPLETENESS_FLOOR


@dataclass(frozen=True)
class RunConfig:
    command: str
    twice_spin_max: int = 8
    tolerance: float = 1e-10
    random_seed: int = 0
    geometry_trials: int = 20
    output_path: str | None = None
    output_format: str = "text"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.twice_spin_max <= TWICE_SPIN_CAP:
            raise ValueError(f"twice_spin_max must lie in [0, {TWICE_SPIN_CAP}]")
        if self.geometry_trials < 1:
            raise ValueError("geometry_trials must be at least 1")
        if not 0 <= self.random_seed < 2**64:
            raise ValueError("random_seed must fit in 64 unsigned bits")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "twice_spin_max": cfg.twice_spin_max,
        "tolerance": cfg.tolerance,
        "random_seed": cfg.random_seed,
        "geometry_trials": cfg.geometry_trials,
    }


def cmd_phase_table(cfg: RunConfig) -> dict:
    """Exchange-phase table: one row per 2s, worst of the geometry trials."""
    rng = np.random.default_rng(cfg.random_seed)
    rows = []
    for ts in range(cfg.twice_spin_max + 1):
        s = make_spin(ts)
        worst = None
        row_passed = True
        for _ in range(cfg.geometry_trials):
            a, b = verify.sample_point_pair(rng)
            report = exchange_phase(s, a, b, tol=cfg.tolerance)
            row_passed = row_passed and report.passed
            if worst is None or report.residual > worst.residual:
                worst = report
        rows.append(
            {
                "twice_spin": ts,
                "expected": float(s.exchange_sign),
                "measured_re": float(worst.measured_phase.real),
                "measured_im": float(worst.measured_phase.imag),
                "residual": float(worst.residual),
                "passed": row_passed,
            }
        )
    return {
        "command": "phase-table",
        "config": _config_dict(cfg),
        "rows": rows,
        "passed": all(r["passed"] for r in rows),
    }


def cmd_verify_all(cfg: RunConfig) -> dict:
    """Run every module's invariant suite and flatten the results."""
    checks = verify.run_all(
        seed=cfg.random_seed, tol=cfg.tolerance, trials=cfg.geometry_trials
    )
    rows = []
    for suite in verify.SUITE_ORDER:
        suite_checks = [c for c in checks if c.suite == suite]
        for c in suite_checks:
            rows.append(
                {
                    "suite": c.suite,
                    "check": c.check,
                    "residual": c.residual,
                    "passed": c.passed,
                }
            )
        rows.append(
            {
                "suite": suite,
                "check": "suite_summary",
                "residual": max((c.residual for c in suite_checks), default=0.0),
                "passed": all(c.passed for c in suite_checks),
            }
        )
    return {
        "command": "verify-all",
        "config": _config_dict(cfg),
        "rows": rows,
        "passed": all(c.passed for c in checks),
    }


def cmd_tilted(cfg: RunConfig) -> dict:
    """Tilt-angle tables, Gram matrices, and tilt-transfer verdicts per spin."""
    rows = []
    passed = True
    for ts in range(cfg.twice_spin_max + 1):
        s = make_spin(ts)
        for l in range(ts + 1):
            rows.append(
                {
                    "twice_spin": ts,
                    "kind": "theta",
                    "i": l,
                    "j": None,
                    "value_re": theta_l(s, l),
                    "value_im": 0.0,
                    "passed": True,
                }
            )
        gram, min_singular = tilted_gram(s)
        for i in range(ts + 1):
            for j in range(ts + 1):
                rows.append(
                    {
                        "twice_spin": ts,
                        "kind": "gram",
                        "i": i,
                        "j": j,
                        "value_re": float(gram[i, j].real),
                        "value_im": float(gram[i, j].imag),
                        "passed": True,
                    }
                )
        singular_ok = min_singular > COMPLETENESS_FLOOR
        passed = passed and singular_ok
        rows.append(
            {
                "twice_spin": ts,
                "kind": "min_singular",
                "i": None,
                "j": None,
                "value_re": float(min_singular),
                "value_im": 0.0,
                "passed": singular_ok,
            }
        )
        for la in range(ts + 1):
            for lb in range(ts + 1):
                report = verify_tilt_transfer(s, la, lb, tol=cfg.tolerance)
                passed = passed and report.passed
                rows.append(
                    {
                        "twice_spin": ts,
                        "kind": "tilt_transfer",
                        "i": la,
                        "j": lb,
                        "value_re": float(report.residual),
                        "value_im": 0.0,
                        "passed": report.passed,
                    }
                )
    return {
        "command": "tilted",
        "config": _config_dict(cfg),
        "rows": rows,
        "passed": passed,
    }


_COMMANDS = {
    "phase-table": cmd_phase_table,
    "verify-all": cmd_verify_all,
    "tilted": cmd_tilted,
}


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_csv(doc: dict) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    columns = list(doc["rows"][0].keys()) if doc["rows"] else []
    writer.writerow(columns)
    for row in doc["rows"]:
        writer.writerow([_format_cell(row[c]) for c in columns])
    return buffer.getvalue()


def render_text(doc: dict) -> str:
    lines = [f"# spinswap {doc['command']}"]
    config = " ".join(f"{k}={_format_cell(v)}" for k, v in doc["config"].items())
    lines.append(f"# {config}")
    rows = doc["rows"]
    if rows:
        columns = list(rows[0].keys())
        table = [[_format_cell(row[c]) for c in columns] for row in rows]
        widths = [
            max(len(col), *(len(line[i]) for line in table))
            for i, col in enumerate(columns)
        ]
        lines.append("  ".join(col.ljust(w) for col, w in zip(columns, widths)))
        for line in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)))
    lines.append(f"overall: {'PASS' if doc['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


_RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


def render(doc: dict, output_format: str) -> str:
    return _RENDERERS[output_format](doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinswap",
        description="Verify the pair-exchange phase (-1)^(2s) and its tilted-basis extension.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("phase-table", "exchange-phase table over 2s = 0..max"),
        ("verify-all", "run every module's invariant suite"),
        ("tilted", "tilt angles, Gram matrices, and transfer verdicts"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--twice-spin-max", dest="twice_spin_max", type=int, default=8)
        cmd.add_argument("--tol", dest="tolerance", type=float, default=1e-10)
        cmd.add_argument("--seed", dest="random_seed", type=int, default=0)
        cmd.add_argument("--trials", dest="geometry_trials", type=int, default=20)
        cmd.add_argument("--out", dest="output_path", default=None)
        cmd.add_argument(
            "--format", dest="output_format", choices=FORMATS, default="text"
        )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            twice_spin_max=args.twice_spin_max,
            tolerance=args.tolerance,
            random_seed=args.random_seed,
            geometry_trials=args.geometry_trials,
            output_path=args.output_path,
            output_format=args.output_format,
        )
    except ValueError as exc:
        parser.error(str(exc))
    doc = _COMMANDS[cfg.command](cfg)
    payload = render(doc, cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return 0 if doc["passed"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
