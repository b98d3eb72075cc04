"""Command-line front end: ``isingcc <command> [flags]``.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import verify as suites
from .common_cause import LAYOUTS, grid_spacing, joint_cc_check, search_common_causes
from .dynamics import DynamicsParams
from .element import TOL
from .scenario import (
    ScenarioSpec,
    UnitVector3,
    ch_closed_form,
    ch_value,
    chsh_closed_form,
    chsh_value,
    correlation_table,
)

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

# sites touched by events, states and common-cause candidates
REQUIRED_SUPPORT = (-1, 1)

A3B3_PRESET = {"a": [[0, 0, 1], [0, 0, 1]], "b": [[0, 0, 1], [0, 0, 1]]}


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: ScenarioSpec
    window: tuple[int, int]
    tol: float
    grid: int | None
    out: Path | None
    fmt: str


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise ConfigError(f"--window expects LO:HI with integers, got {text!r}") from None
    if hi < lo:
        raise ConfigError(f"--window {text}: HI < LO")
    return lo, hi


def _spec_from_args(args) -> ScenarioSpec:
    if args.scenario:
        try:
            spec = ScenarioSpec.load(args.scenario)
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read scenario {args.scenario}: {exc}") from None
    else:
        spec = ScenarioSpec()
    if getattr(args, "a3b3_nonzero", False):
        spec = replace(spec, a=tuple(UnitVector3.of(v) for v in A3B3_PRESET["a"]),
                       b=tuple(UnitVector3.of(v) for v in A3B3_PRESET["b"]))
    d = spec.dynamics
    dyn = DynamicsParams(
        d.theta1 if args.theta1 is None else args.theta1,
        d.theta2 if args.theta2 is None else args.theta2,
        d.eta1 if args.eta1 is None else args.eta1,
        d.eta2 if args.eta2 is None else args.eta2,
    )
    lam = spec.lam if args.lam is None else args.lam
    return ScenarioSpec(spec.a, spec.b, lam, dyn)


def build_config(args) -> RunConfig:
    try:
        spec = _spec_from_args(args)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    window = parse_window(args.window)
    if window[0] > REQUIRED_SUPPORT[0] or window[1] < REQUIRED_SUPPORT[1]:
        raise ConfigError(f"--window {args.window} does not cover sites {REQUIRED_SUPPORT[0]}..{REQUIRED_SUPPORT[1]}")
    if not (args.tol > 0 and math.isfinite(args.tol)):
        raise ConfigError("--tol must be positive")
    if args.grid is not None and args.grid < 2:
        raise ConfigError("--grid must be at least 2")
    return RunConfig(args.command, spec, window, args.tol, args.grid, args.out, args.format)


# commands return (payload, csv_rows or None, passed)


def cmd_correlations(cfg: RunConfig):
    rows = correlation_table(cfg.spec)
    payload = {"scenario": cfg.spec.to_json(), "correlations": rows, "tol": cfg.tol}
    return payload, rows, all(r["abs_diff"] < cfg.tol for r in rows)


def _bell_record(spec: ScenarioSpec) -> dict:
    ch, chsh = ch_value(spec), chsh_value(spec)
    ch_cf, chsh_cf = ch_closed_form(spec), chsh_closed_form(spec)
    return {
        "lambda": spec.lam,
        "ch": ch, "ch_closed_form": ch_cf, "ch_abs_diff": abs(ch - ch_cf),
        "chsh": chsh, "chsh_closed_form": chsh_cf, "chsh_abs_diff": abs(chsh - chsh_cf),
        "ch_violated": ch < -1 or ch > 0,
        "chsh_violated": abs(chsh) > 2,
    }


def cmd_bell(cfg: RunConfig):
    rec = _bell_record(cfg.spec)
    rec["violated"] = rec["ch_violated"] or rec["chsh_violated"]
    payload = {"scenario": cfg.spec.to_json(), **rec, "tol": cfg.tol}
    return payload, [rec], rec["ch_abs_diff"] < cfg.tol and rec["chsh_abs_diff"] < cfg.tol


def cmd_sweep_lambda(cfg: RunConfig):
    n = cfg.grid or 101
    rows = [_bell_record(replace(cfg.spec, lam=k / (n - 1))) for k in range(n)]
    payload = {"scenario": cfg.spec.to_json(), "rows": rows, "tol": cfg.tol}
    ok = all(r["ch_abs_diff"] < cfg.tol and r["chsh_abs_diff"] < cfg.tol for r in rows)
    return payload, rows, ok


def cmd_verify(cfg: RunConfig, which: str):
    spec = cfg.spec
    if which == "oracle":
        rep = suites.verify_oracle(tol=cfg.tol)
    elif which == "dynamics":
        rep = suites.verify_dynamics(tol=cfg.tol)
    elif which == "dimensions":
        rep = suites.verify_dimensions()
    elif which == "primitive-causality":
        rep = suites.verify_primitive_causality(tol=cfg.tol)
    elif which == "prop1":
        rep = suites.verify_prop1(spec, n=cfg.grid or 20, tol=cfg.tol)
    else:
        if cfg.window[1] <= REQUIRED_SUPPORT[1]:
            raise ConfigError("verify prop2 needs a window reaching past site 1 for the distant projection")
        rep = suites.verify_prop2(spec, tol=cfg.tol, distant_site=cfg.window[1])
    return rep, None, bool(rep["pass"])


def _c3_constraint(spec: ScenarioSpec, c: UnitVector3, ct: UnitVector3) -> float:
    lam = spec.lam
    return (1 + lam) ** 2 / 4 * c.r3 ** 2 - (1 - lam) ** 2 / 4 * ct.r3 ** 2 - lam


def cmd_search(cfg: RunConfig, layout: str, workers: int, a3b3: bool):
    n = cfg.grid or 40
    hits = search_common_causes(cfg.spec, n, cfg.tol, workers=workers, layout=layout)
    eps = grid_spacing(n)
    out = []
    for hit in hits:
        rep = joint_cc_check(hit.candidate, cfg.spec, tol=cfg.tol)
        c, ct = hit.candidate.c, hit.candidate.c_tilde
        rec = {
            "grid_index": [hit.i, hit.j],
            "candidate": hit.candidate.to_json(),
            "max_residual": hit.max_residual,
            "pass": rep.passed,
            "commutator_norms": rep.commutator_norms,
            "noncommuting": rep.noncommuting,
            "localized_in_O_C": rep.localized,
            "O_C_in_common_past": rep.region_in_common_past,
            "abs_c2_within_spacing": abs(c.r2) <= eps,
        }
        if a3b3:
            rec["c3_constraint"] = _c3_constraint(cfg.spec, c, ct)
        out.append(rec)
    ok = all(r["pass"] and r["localized_in_O_C"] and r["O_C_in_common_past"] for r in out)
    rows = [
        {
            "i": r["grid_index"][0], "j": r["grid_index"][1],
            "c1": r["candidate"]["c"][0], "c2": r["candidate"]["c"][1], "c3": r["candidate"]["c"][2],
            "ct1": r["candidate"]["c_tilde"][0], "ct2": r["candidate"]["c_tilde"][1], "ct3": r["candidate"]["c_tilde"][2],
            "max_residual": r["max_residual"], "noncommuting": r["noncommuting"],
            "localized_in_O_C": r["localized_in_O_C"],
        }
        for r in out
    ]
    return out, rows, ok


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % (value + 0.0)
    return str(value)


def render(payload, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if rows is None:
        raise ConfigError("csv output is only available for tabular commands")
    buf = io.StringIO()
    fields = list(rows[0]) if rows else []
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([_fmt(r[f]) for f in fields])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=float, default=None, help="state mixing parameter in [0, 1]")
    common.add_argument("--theta1", type=float, default=None)
    common.add_argument("--theta2", type=float, default=None)
    common.add_argument("--eta1", type=int, default=None)
    common.add_argument("--eta2", type=int, default=None)
    common.add_argument("--scenario", type=Path, default=None, help="scenario JSON file")
    common.add_argument("--window", default="-3:3", help="site window LO:HI")
    common.add_argument("--tol", type=float, default=TOL)
    common.add_argument("--grid", type=int, default=None)
    common.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="isingcc", description="Noncommutative common causes on the Ising lattice")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("correlations", parents=[common], help="2x2 correlation table")
    sub.add_parser("bell", parents=[common], help="CH and CHSH values")
    sub.add_parser("sweep-lambda", parents=[common], help="CH and CHSH over a lambda grid")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("which", choices=sorted(suites.SUITES))
    s = sub.add_parser("search", parents=[common], help="grid search for common causes")
    s.add_argument("--layout", choices=sorted(LAYOUTS), default="proof")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--a3b3-nonzero", action="store_true", help="use a = b = (0, 0, 1) for all settings")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = build_config(args)
        if cfg.command == "correlations":
            payload, rows, ok = cmd_correlations(cfg)
        elif cfg.command == "bell":
            payload, rows, ok = cmd_bell(cfg)
        elif cfg.command == "sweep-lambda":
            payload, rows, ok = cmd_sweep_lambda(cfg)
        elif cfg.command == "verify":
            if cfg.fmt == "csv":
                raise ConfigError("verify reports are JSON only")
            payload, rows, ok = cmd_verify(cfg, args.which)
        else:
            if args.workers < 1:
                raise ConfigError("--workers must be at least 1")
            payload, rows, ok = cmd_search(cfg, args.layout, args.workers, args.a3b3_nonzero)
        text = render(payload, rows, cfg.fmt)
    except ConfigError as exc:
        print(f"isingcc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        try:
            cfg.out.write_text(text)
        except OSError as exc:
            print(f"isingcc: error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return EXIT_PASS if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
