"""Command-line entry point ``abelian-cover-lab``.

Exit codes: 0 pass, 1 verification failure, 2 computation failure, 3 usage error.
"""
from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .checks import SUITES, run_checks
from .exact import CycNum
from .multipoly import DEFAULT_STEP_BUDGET, PolySyntaxError, UnknownIdentifier, parse_number
from .report import COMPUTE_FAIL, Report, branch_report, checks_report, render_text, sweep_report

EXIT_USAGE = 3

COMMAND_SUITES = {
    "heisenberg": ["heisenberg"],
    "lattice": ["lattice"],
    "eigenspaces": ["eigenspaces"],
    "invariants": ["invariants"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    point: tuple | None = None
    translation: CycNum | None = None
    step_budget: int = DEFAULT_STEP_BUDGET
    output: str = "text"
    sweep: list = field(default_factory=list)
    only: list = field(default_factory=list)
    fixtures: str | None = None
    workers: int = 0
    mask_timings: bool = False


def _number(text: str) -> CycNum:
    try:
        return parse_number(text)
    except (PolySyntaxError, UnknownIdentifier, ValueError) as exc:
        raise UsageError(f"cannot read number {text!r}: {exc}") from None


def parse_sweep(text: str) -> list[tuple]:
    """One ``a, c`` (or ``a c``) pair per line; blank lines and ``#`` comments ignored."""
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        line = line.strip("()[]")
        parts = [p for p in (line.split(",") if "," in line else line.split()) if p.strip()]
        if len(parts) != 2:
            raise UsageError(f"sweep line {n}: expected two numbers, got {raw!r}")
        out.append((_number(parts[0].strip()), _number(parts[1].strip())))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="abelian-cover-lab", description="Quadruple covers of abelian surfaces: pipelines and checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--output", choices=["text", "json"], default="text")
        sp.add_argument("--mask-timings", action="store_true", help="write null timings (byte-stable output)")
        sp.add_argument("--step-budget", type=int, default=DEFAULT_STEP_BUDGET)

    b = sub.add_parser("branch", help="branch curve, smoothness and cusps at a point [a:c]")
    b.add_argument("--a", help="a, e.g. 1, -2, 3/4 or zeta")
    b.add_argument("--c", help="c; c = 0 selects the point at infinity")
    b.add_argument("--translation", help="translation T of the chart")
    b.add_argument("--sweep", type=Path, help="file with one a, c pair per line")
    b.add_argument("--workers", type=int, default=0, help="worker processes for sweeps (0 = auto)")
    common(b)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--only", action="append", default=[],
                   help=f"suite to run (repeatable, comma separated): {', '.join(SUITES)}")
    v.add_argument("--fixtures", type=Path, help="alternative fixture file for the Heisenberg suite")
    common(v)

    for name in COMMAND_SUITES:
        sp = sub.add_parser(name, help=f"run the {name} checks")
        common(sp)
    return p


def config_from_args(ns) -> RunConfig:
    cfg = RunConfig(ns.command, step_budget=ns.step_budget, output=ns.output, mask_timings=ns.mask_timings)
    if cfg.step_budget <= 0:
        raise UsageError("--step-budget must be positive")
    if ns.command == "branch":
        if ns.sweep is not None:
            if ns.a is not None or ns.c is not None:
                raise UsageError("--sweep cannot be combined with --a/--c")
            try:
                text = ns.sweep.read_text()
            except OSError as exc:
                raise UsageError(f"cannot read sweep file: {exc}") from None
            cfg.sweep = parse_sweep(text)
            if not cfg.sweep:
                raise UsageError("sweep file lists no points")
            cfg.workers = ns.workers
        else:
            if ns.a is None or ns.c is None:
                raise UsageError("branch needs --a and --c (or --sweep)")
            cfg.point = (_number(ns.a), _number(ns.c))
            if not cfg.point[0] and not cfg.point[1]:
                raise UsageError("(a, c) must not both vanish")
        if ns.translation is not None:
            cfg.translation = _number(ns.translation)
    elif ns.command == "verify":
        only = [s.strip() for chunk in ns.only for s in chunk.split(",") if s.strip()]
        unknown = [s for s in only if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(SUITES)}")
        cfg.only = only
        if ns.fixtures is not None:
            try:
                cfg.fixtures = ns.fixtures.read_text()
            except OSError as exc:
                raise UsageError(f"cannot read fixture file: {exc}") from None
    return cfg


def _branch_job(args) -> Report:
    a, c, T, budget = args
    try:
        return branch_report(a, c, T, budget)
    except Exception as exc:  # noqa: BLE001 - isolate per-point failures
        return Report("branch", {"a": str(a), "c": str(c), "translation": str(T or 0), "step_budget": budget},
                      {"error": f"{type(exc).__name__}: {exc}"}, COMPUTE_FAIL, {})


def run_sweep(cfg: RunConfig) -> Report:
    jobs = [(a, c, cfg.translation, cfg.step_budget) for a, c in cfg.sweep]
    workers = cfg.workers or min(4, len(jobs))
    if workers <= 1:
        reports = [_branch_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_branch_job, jobs))
    inputs = {"points": [[str(a), str(c)] for a, c in cfg.sweep],
              "translation": str(cfg.translation or 0), "step_budget": cfg.step_budget}
    return sweep_report(reports, inputs)


def execute(cfg: RunConfig) -> Report:
    if cfg.command == "branch":
        if cfg.sweep:
            return run_sweep(cfg)
        return _branch_job((cfg.point[0], cfg.point[1], cfg.translation, cfg.step_budget))
    suites = cfg.only if cfg.command == "verify" else COMMAND_SUITES[cfg.command]
    t = time.perf_counter()
    checks = run_checks(suites or None, cfg.fixtures)
    inputs = {"suites": suites or list(SUITES)}
    if cfg.fixtures is not None:
        inputs["fixtures"] = "custom"
    return checks_report(cfg.command, checks, inputs, time.perf_counter() - t)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"abelian-cover-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = execute(cfg)
    if cfg.output == "json":
        sys.stdout.write(rep.to_json(cfg.mask_timings))
    else:
        sys.stdout.write(render_text(rep))
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
