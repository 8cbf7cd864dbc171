"""Report assembly for the command line: branch summaries, check lists,
sweeps, and their text or JSON rendering."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from . import __version__
from .checks import Check
from .coverbuilder import cover_model
from .exact import CycNum
from .heisenberg import INFINITY, conic_point
from .multipoly import MPoly, ResourceLimitExceeded, format_poly, normalize_scalar, scalar_ratio
from .planecurves import (StructuralError, branch_curve, classify_singularity, cubics_through,
                          hesse_flex_duals, in_T1, in_T2, local_model_singular_locus, reference_sextic)

SCHEMA = "abelian-cover-lab/report"
SCHEMA_VERSION = 1

PASS = "pass"
VERIFY_FAIL = "verification_failure"
COMPUTE_FAIL = "computation_failure"

EXIT_CODES = {PASS: 0, VERIFY_FAIL: 1, COMPUTE_FAIL: 2}


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    status: str = PASS
    timings: dict = field(default_factory=dict)

    def as_dict(self, mask_timings: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "status": self.status,
            "results": self.results,
            "timings": None if mask_timings else self.timings,
        }

    def to_json(self, mask_timings: bool = False) -> str:
        return json.dumps(self.as_dict(mask_timings), indent=2, ensure_ascii=False) + "\n"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def worst(statuses) -> str:
    statuses = list(statuses)
    if COMPUTE_FAIL in statuses:
        return COMPUTE_FAIL
    if VERIFY_FAIL in statuses:
        return VERIFY_FAIL
    return PASS


class _Clock:
    def __init__(self):
        self.times: dict = {}

    def run(self, label, fn, *args):
        t = time.perf_counter()
        try:
            return fn(*args)
        finally:
            self.times[label] = round(time.perf_counter() - t, 4)


def flex_parameters(a: CycNum, c: CycNum):
    """(m0, m1) of the Hesse member whose dual is the sextic at [a:c]."""
    return a * a * c, (a ** 3 - c ** 3 * 4) / 6


def branch_report(a: CycNum, c: CycNum, translation: CycNum | None = None, budget: int = 10_000_000) -> Report:
    a, c = CycNum.coerce(a), CycNum.coerce(c)
    T = CycNum.coerce(translation or 0)
    inputs = {"a": str(a), "c": str(c), "translation": str(T), "step_budget": budget}
    res: dict = {}
    clock = _Clock()
    if not a and not c:
        raise ValueError("(a, c) must not both vanish")
    pt = conic_point((a, c)) if c else conic_point(INFINITY)
    res["conic_point"] = str(pt)
    res["in_T1"] = in_T1(a, c)
    res["in_T2"] = in_T2(a, c)
    try:
        cm = cover_model(pt, T)
        dim = clock.run("singular_locus", local_model_singular_locus, cm, budget)
        res["singular_locus_dim"] = dim
        res["local_model_smooth"] = dim < 0
        if dim >= 0:
            res["branch"] = {"status": f"skipped: local model has a singular locus of dimension {dim}"}
            return Report("branch", inputs, res, PASS, clock.times)
        cm0 = cm if not T else cover_model(pt)
        br = clock.run("branch", branch_curve, cm0, budget)
    except (ResourceLimitExceeded, StructuralError) as exc:
        res["error"] = f"{type(exc).__name__}: {exc}"
        return Report("branch", inputs, res, COMPUTE_FAIL, clock.times)

    b: dict = {
        "status": "computed",
        "eliminant": format_poly(br.eliminant),
        "eliminant_profile": [list(p) for p in br.profile],
        "reduced": format_poly(br.reduced),
        "reduced_projective": format_poly(br.reduced_curve.normalized()),
        "multiplicity": br.multiplicity,
        "extraneous_factor": format_poly(br.extraneous) if br.extraneous is not None else None,
        "sextic": format_poly(normalize_scalar(br.homogenized.form)),
    }
    if T:
        vs = br.eliminant.varset
        Yv, Zv = MPoly.gens(vs)
        moved = br.eliminant.subs({"Y": Yv - T, "Z": Zv - T}, vs)
        b["eliminant_translated"] = format_poly(moved)
    ratio = scalar_ratio(br.homogenized.form, reference_sextic(a, c).form)
    b["reference_ratio"] = str(ratio) if ratio is not None else None
    b["matches_reference"] = ratio is not None
    res["branch"] = b

    cusp: dict = {}
    m0, m1 = flex_parameters(a, c)
    cusp["hesse_parameters"] = [str(m0), str(m1)]
    try:
        pts = hesse_flex_duals(m0, m1)
    except ValueError as exc:
        cusp["status"] = f"skipped: {exc}"
        pts = []
    rows = []
    for p in pts:
        try:
            kind = classify_singularity(br.homogenized, p).kind
        except ValueError:
            kind = "off_curve"
        rows.append({"point": str(p), "kind": kind})
    cusp["table"] = rows
    cusp["ordinary_cusps"] = sum(1 for r in rows if r["kind"] == "ordinary_cusp")
    if pts:
        cusp["cubics_through_cusps"] = len(cubics_through(pts))
    res["cusps"] = cusp
    return Report("branch", inputs, res, PASS if b["matches_reference"] else VERIFY_FAIL, clock.times)


def checks_report(command: str, checks: list[Check], inputs: dict, elapsed: float) -> Report:
    results = {
        "checks": [c.as_dict() for c in checks],
        "passed": sum(1 for c in checks if c.passed),
        "failed": [c.name for c in checks if not c.passed],
    }
    status = PASS if all(c.passed for c in checks) else VERIFY_FAIL
    return Report(command, inputs, results, status, {"total": round(elapsed, 4)})


def sweep_report(reports: list[Report], inputs: dict) -> Report:
    rows = []
    for r in reports:
        br = r.results.get("branch", {})
        rows.append({
            "a": r.inputs.get("a"), "c": r.inputs.get("c"),
            "status": r.status,
            "smooth": r.results.get("local_model_smooth"),
            "multiplicity": br.get("multiplicity"),
            "ordinary_cusps": r.results.get("cusps", {}).get("ordinary_cusps"),
            "matches_reference": br.get("matches_reference"),
            "error": r.results.get("error"),
        })
    timings = {f"{r.inputs.get('a')},{r.inputs.get('c')}": r.timings for r in reports}
    return Report("branch-sweep", inputs, {"rows": rows, "points": [r.as_dict(True) for r in reports]},
                  worst(r.status for r in reports), timings)


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------

def render_text(rep: Report) -> str:
    out = [f"{rep.command} (schema {SCHEMA_VERSION}, version {__version__}) status: {rep.status}"]
    for k, v in rep.inputs.items():
        out.append(f"  input {k} = {v}")
    res = rep.results
    if "checks" in res:
        for c in res["checks"]:
            tag = "PASS" if c["passed"] else "FAIL"
            out.append(f"{tag} {c['name']}: observed {c['observed']}; expected {c['expected']}")
        out.append(f"{res['passed']}/{len(res['checks'])} checks passed")
    elif "rows" in res:
        out.append("a | c | status | smooth | multiplicity | cusps | matches reference")
        for r in res["rows"]:
            out.append(" | ".join(str(r[k]) for k in
                                  ("a", "c", "status", "smooth", "multiplicity", "ordinary_cusps",
                                   "matches_reference")))
    else:
        out += _render_mapping(res, 1)
    return "\n".join(out) + "\n"


def _render_mapping(d: dict, depth: int) -> list[str]:
    pad = "  " * depth
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _render_mapping(v, depth + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines
