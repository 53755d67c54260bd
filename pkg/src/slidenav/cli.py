"""Command-line front end.

Exit codes: 0 success, 1 validation failure (validate) or failed runs
(sweep), 2 malformed input, 3 timeout, 4 safety violation, 5 controller
fault.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence

from . import scenario
from .analysis import ComparisonScenario, compare_routes, delta_closed_form_infinite, delta_numeric
from .export import svg_text, write_csv
from .sim import Controller, OutcomeKind, run
from .sliding_ctrl import validate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CODES = {
    OutcomeKind.TARGET_REACHED: 0,
    OutcomeKind.TIMEOUT: 3,
    OutcomeKind.SAFETY_VIOLATED: 4,
    OutcomeKind.CONTROLLER_FAULT: 5,
}


def _load(path: str):
    try:
        return scenario.load(path)
    except scenario.ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None


def cmd_validate(args) -> int:
    spec = _load(args.scenario)
    if spec is None:
        return EXIT_USAGE
    report = validate(spec.scene, spec.params, spec.sensor, a5_samples=args.a5_samples)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_run(args) -> int:
    spec = _load(args.scenario)
    if spec is None:
        return EXIT_USAGE
    if args.controller:
        spec = replace(spec, sim=replace(spec.sim, controller=Controller(args.controller)))
    try:
        traj = run(spec, strict=args.strict)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = traj.outcome
    print(f"outcome: {out.kind.value} t={out.t:.6g} d_min={out.d_min:.6g}")
    if out.message:
        print(f"detail: {out.message}")
    for flag in traj.flags:
        print(f"flag: {flag}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as f:
            write_csv(traj, f)
    if args.svg:
        Path(args.svg).write_text(svg_text(spec.scene, traj, spec.params, title=Path(args.scenario).name))
    return EXIT_CODES[out.kind]


def compare_rows(L: float, y0: float, wall: float, simulate: bool = True):
    dn = delta_numeric(ComparisonScenario(L, y0, wall))
    dc = delta_closed_form_infinite(L, y0)
    row = {
        "y0/L": y0 / L,
        "delta_numeric/L": dn / L,
        "delta_closed/L": dc / L,
        "bound_slack/L": math.log(2.0) - dn / L,
    }
    if simulate:
        rc = compare_routes(L, y0, wall)
        row["delta_sim/L"] = rc.delta / L
        row["len_sliding/L"] = rc.len_sliding / L
        row["len_pursuit/L"] = rc.len_pursuit / L
    return row


def cmd_compare(args) -> int:
    L, y0 = args.L, args.y0
    if not (L > 0.0 and 0.0 < y0 <= L):
        print(f"error: need 0 < y0 <= L, got y0={y0}, L={L}", file=sys.stderr)
        return EXIT_USAGE
    wall = args.wall * L
    try:
        row = compare_rows(L, y0, wall, simulate=not args.no_sim)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    width = max(len(k) for k in row)
    for k, v in row.items():
        print(f"{k:<{width}}  {v:.9f}")
    print()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(row))
    w.writerow([repr(v) for v in row.values()])
    sys.stdout.write(buf.getvalue())
    ok = row["bound_slack/L"] >= -1e-9 and row["delta_numeric/L"] > 0.0
    if "delta_sim/L" in row:
        ok = ok and row["delta_sim/L"] > 0.0
    return EXIT_OK if ok else EXIT_FAIL


def _sweep_one(path: str, controller: Optional[str]):
    spec = scenario.load(path)
    if controller:
        spec = replace(spec, sim=replace(spec.sim, controller=Controller(controller)))
    traj = run(spec)
    return path, traj.outcome.kind, traj.outcome.t, traj.min_distance


def _expand(paths: Sequence[str]) -> List[str]:
    out = []
    for p in paths:
        pp = Path(p)
        out.extend(sorted(str(q) for q in pp.glob("*.json")) if pp.is_dir() else [p])
    return out


def cmd_sweep(args) -> int:
    paths = _expand(args.scenarios)
    for p in paths:
        if _load(p) is None:
            return EXIT_USAGE
    jobs = args.jobs if args.jobs > 0 else None
    if args.jobs == 1:
        results = [_sweep_one(p, args.controller) for p in paths]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_one, paths, [args.controller] * len(paths)))
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["scenario", "outcome", "t", "d_min"])
    for path, kind, t, dmin in results:
        w.writerow([path, kind.value, repr(t), repr(dmin)])
    return EXIT_OK if all(r[1] is OutcomeKind.TARGET_REACHED for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slidenav", description="Sliding-mode reactive navigation workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check obstacle assumptions and parameter inequalities")
    v.add_argument("scenario")
    v.add_argument("--a5-samples", type=int, default=256)
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("run", help="simulate one scenario")
    r.add_argument("scenario")
    r.add_argument("--controller", choices=[c.value for c in Controller])
    r.add_argument("--csv", help="write the trajectory log here")
    r.add_argument("--svg", help="write a plot here")
    r.add_argument("--strict", action="store_true", help="refuse to run a scenario that fails validation")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("compare", help="sliding vs edge-pursuit path-length gap along a straight wall")
    c.add_argument("--L", type=float, default=1.0, help="sensor range (m)")
    c.add_argument("--y0", type=float, default=1.0, help="lateral offset at B (m)")
    c.add_argument("--wall", type=float, default=30.0, help="wall extent beyond B in units of L")
    c.add_argument("--no-sim", action="store_true", help="skip the simulated cross-check")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("sweep", help="run many scenarios in parallel")
    s.add_argument("scenarios", nargs="+", help="scenario files or directories of them")
    s.add_argument("--controller", choices=[c.value for c in Controller])
    s.add_argument("--jobs", type=int, default=0, help="worker processes (0: one per CPU)")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
