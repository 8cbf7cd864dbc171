"""Named verification checks grouped into suites.

Each check records the values it compared so reports can show them; a
check that raises is recorded as failed with the exception text.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .coverbuilder import CHART_VARS, bidouble_equations, cover_model, natural_deformation
from .exact import CycNum, FieldMatrix, int_det, int_matmul, omega_power, smith_normal_form
from .heisenberg import (DIM45, ConicPoint, bidouble_action15, character_decomposition, cij_forms,
                         cocycle_table, conic_point, deformation_counts, induced45_generator,
                         invariant_subspace45, load_fixtures, parse_fixtures,
                         plucker_coefficient_conditions, plucker_residuals, relabel_last_factor)
from .invariants import CONSTRUCTION_CHERN, fm_bookkeeping, lemma_witness, surface_invariants
from .multipoly import (GREVLEX, IdealHandle, MPoly, VarSet, buchberger_criterion, eliminate,
                        format_poly, groebner, normalize_scalar, parse_poly, radical_membership,
                        scalar_ratio, squarefree_part)
from .planecurves import (branch_curve, classify_singularity, cubics_through,
                          hesse_dual, hesse_flex_duals, is_triangle, local_model_singular_locus,
                          reference_sextic, singular_scheme_dimension)

W = omega_power(1)


@dataclass
class Check:
    name: str
    suite: str
    passed: bool
    observed: str
    expected: str

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: observed {self.observed}; expected {self.expected}"

    def as_dict(self) -> dict:
        return {"name": self.name, "suite": self.suite, "passed": self.passed,
                "observed": self.observed, "expected": self.expected}


class _Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[Check] = []

    def add(self, name: str, observed, expected, passed: bool | None = None):
        if passed is None:
            passed = observed == expected
        self.checks.append(Check(name, self.suite, bool(passed), str(observed), str(expected)))

    def guarded(self, name: str, expected: str, fn: Callable[[], None]):
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - recorded, not swallowed
            self.checks.append(Check(name, self.suite, False, f"error: {type(exc).__name__}: {exc}", expected))


def _pt(a, c):
    return f"{a},{c}"


# ---------------------------------------------------------------------------
# criterion suites
# ---------------------------------------------------------------------------

BRANCH_POINTS = [(1, 2), (2, 1), (1, 3)]
DUAL_POINTS = [(1, 2), (2, 1), (1, 3), (-1, 1), (W, 2)]


def suite_branch(rec: _Recorder):
    for a, c in BRANCH_POINTS:
        def run(a=a, c=c):
            br = branch_curve(cover_model(conic_point((a, c))))
            got = normalize_scalar(br.homogenized.form)
            want = normalize_scalar(reference_sextic(a, c).form)
            rec.add(f"branch_matches_reference[{_pt(a, c)}]", format_poly(got), format_poly(want))
        rec.guarded(f"branch_matches_reference[{_pt(a, c)}]", "reference sextic", run)


def pencil_parameters(a, c):
    """(m0, m1) as stated for the dual-pencil identity."""
    a, c = CycNum.coerce(a), CycNum.coerce(c)
    return a * a * c, a ** 3 / 2 - c ** 3 * 2


def suite_dual(rec: _Recorder):
    for a, c in DUAL_POINTS:
        ref = reference_sextic(a, c).form
        m0, m1 = pencil_parameters(a, c)
        ratio = scalar_ratio(ref, hesse_dual(m0, m1).form)
        rec.add(f"dual_pencil_identity[{_pt(a, c)}]", "proportional" if ratio is not None else "not proportional",
                "proportional")
    # the same identity with m1 divided by 3
    for a, c in DUAL_POINTS:
        ref = reference_sextic(a, c).form
        m0, m1 = pencil_parameters(a, c)
        ratio = scalar_ratio(ref, hesse_dual(m0, m1 / 3).form)
        rec.add(f"dual_pencil_identity_m1_over_3[{_pt(a, c)}]",
                "proportional" if ratio is not None else "not proportional", "proportional")


def suite_triangle(rec: _Recorder):
    def origin():
        br = branch_curve(cover_model(conic_point((0, 1))))
        rec.add("triangle[0,1].sextic", format_poly(normalize_scalar(br.homogenized.form)), "X^2*Y^2*Z^2")
        rec.add("triangle[0,1].multiplicity", br.multiplicity, 2)
        rec.add("triangle[0,1].reduced", format_poly(br.reduced_curve.normalized()), "X*Y*Z")
    rec.guarded("triangle[0,1]", "X^2*Y^2*Z^2, multiplicity 2", origin)

    def minus_two():
        br = branch_curve(cover_model(conic_point((-2, 1))))
        red = br.reduced_curve
        rec.add("triangle[-2,1].multiplicity", br.multiplicity, 2)
        rec.add("triangle[-2,1].reduced_degree", red.degree, 3)
        rec.add("triangle[-2,1].three_lines", is_triangle(red), True)
    rec.guarded("triangle[-2,1]", "multiplicity 2, triangle", minus_two)


SMOOTHNESS_EXPECTED = {(0, 1): -1, (1, 2): -1, (2, 1): -1, (1, 1): 1}


def suite_smoothness(rec: _Recorder):
    for (a, c), want in SMOOTHNESS_EXPECTED.items():
        name = f"singular_locus_dim[{_pt(a, c)}]"
        rec.guarded(name, str(want),
                    lambda a=a, c=c, want=want, name=name:
                    rec.add(name, local_model_singular_locus(cover_model(conic_point((a, c)))), want))


def suite_cusps(rec: _Recorder):
    curve = hesse_dual(1, "-3/2")

    def run():
        pts = hesse_flex_duals(1, "-3/2")
        kinds = [classify_singularity(curve, p).kind for p in pts]
        rec.add("flex_duals_are_cusps", f"{kinds.count('ordinary_cusp')} ordinary_cusp of {len(kinds)}",
                "9 ordinary_cusp of 9")
        rec.add("singular_scheme_dim", singular_scheme_dimension(curve), 0)
        rec.add("cubics_through_cusps", len(cubics_through(pts)), 1)
    rec.guarded("cusp_structure", "9 cusps, dim 0, one cubic", run)


def suite_heisenberg(rec: _Recorder, fixtures_text: str | None = None):
    inv = invariant_subspace45()
    rec.add("invariant_subspace_dim", len(inv), 5)
    fixtures = parse_fixtures(fixtures_text) if fixtures_text is not None else load_fixtures()
    for name in sorted(fixtures):
        rec.add(f"fixture_membership[{name}]", inv.contains(fixtures[name]), True)
    swap = {"Y": "Z", "Z": "Y"}
    for name in sorted(fixtures):
        rec.add(f"fixture_membership_last_factor_YZ_swapped[{name}]",
                inv.contains(relabel_last_factor(fixtures[name], swap)), True)
    eye = FieldMatrix.identity(DIM45)
    central = [induced45_generator(FieldMatrix.identity(3).scale(omega_power(k))) for k in range(3)]
    rec.add("center_acts_trivially", all(m == eye for m in central), True)
    table = cocycle_table()
    good = sum(1 for _, lhs, rhs in table if lhs == rhs)
    rec.add("cocycle_identity", f"{good}/{len(table)}", "81/81")


def suite_plucker(rec: _Recorder):
    vs = VarSet(["s", "t", "X", "Y", "Z"])
    g = {n: MPoly.var(vs, n) for n in vs}
    s, t = g["s"], g["t"]
    coords = {"a": s * t, "b": -(s * t), "c": s * s, "d": MPoly.zero(vs), "e": -(t * t)}
    res = plucker_residuals(cij_forms(coords, g))
    rec.add("conic_parametrization_annihilates", f"{sum(1 for r in res if not r)}/{len(res)}", "15/15")
    conds = plucker_coefficient_conditions()
    I = IdealHandle(tuple(conds))
    cvs = conds[0].varset
    for text in ("a + b", "d", "a^2 + c*e"):
        rec.add(f"radical_membership[{text}]", radical_membership(parse_poly(text, cvs), I), True)


BIDOUBLE_TEXT = ["u^2 - Y*Z", "u*v - Y*w", "u*w - Z*v", "v^2 - Y", "v*w - u", "w^2 - Z"]


def suite_bidouble(rec: _Recorder):
    want = [format_poly(parse_poly(t, CHART_VARS)) for t in BIDOUBLE_TEXT]
    cm = cover_model(ConicPoint(0, 0, 1, 0, 0))
    got = [format_poly(f) for f in cm.equations]
    rec.add("bidouble_equations_match", " | ".join(got), " | ".join(want))
    nat = [format_poly(f.subs({"X": 1}, CHART_VARS)) for f in natural_deformation()]
    rec.add("natural_deformation_at_zero", " | ".join(nat), " | ".join(want))
    rec.add("bidouble_equations_helper", " | ".join(format_poly(f) for f in bidouble_equations()),
            " | ".join(want))


def suite_invariants(rec: _Recorder):
    chi, k2, pa = surface_invariants(CONSTRUCTION_CHERN)
    rec.add("surface_invariants", f"chi={chi} K2={k2} pa={pa}", "chi=1 K2=6 pa=7")
    rec.add("fm_bookkeeping[1,3]", fm_bookkeeping((1, 3)).as_tuple(), (3, 3, (1, 3), 2, 1))


def suite_lattice(rec: _Recorder):
    w = lemma_witness()
    rec.add("lattice_index", w.index, 3)
    rec.add("lattice_type", w.pol_type, (1, 3))
    rec.add("kernel_invariants", list(w.kernel_invariants), [3, 3])


def suite_eigenspaces(rec: _Recorder):
    r, s = bidouble_action15()
    table = character_decomposition(r, s)
    rec.add("eigenspace_dims", f"{table.trivial()}+" + "+".join(map(str, table.nontrivial())),
            "7+1+1+1+1+1+1+1+1")
    rec.add("deformation_counts", deformation_counts(7, 2, 3), (5, 8))


# ---------------------------------------------------------------------------
# randomized properties
# ---------------------------------------------------------------------------

PROPERTY_INSTANCES = 50


def random_poly(rng: random.Random, vs: VarSet, max_deg: int = 2, max_terms: int = 3) -> MPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * len(vs)
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(len(vs))] += 1
        c = rng.randint(-3, 3) or 1
        terms[tuple(e)] = CycNum(c) if rng.random() < 0.85 else CycNum(c, rng.randint(-1, 1))
    return MPoly(vs, terms)


def property_confluence(rng: random.Random) -> bool:
    vs = VarSet(["x", "y", "z"])
    gens = [random_poly(rng, vs) for _ in range(rng.randint(1, 3))]
    return buchberger_criterion(groebner(gens, GREVLEX))


def property_elimination(rng: random.Random) -> bool:
    vs = VarSet(["t", "x", "y"])
    gens = [random_poly(rng, vs) for _ in range(rng.randint(1, 3))]
    I = IdealHandle(tuple(gens))
    a = eliminate(I, ["t"], inner="grevlex")
    b = eliminate(I, ["t"], inner="lex")
    ga = a.groebner()
    gb = groebner(b.groebner(), GREVLEX) if b.groebner() else []
    return ga == gb


def property_squarefree(rng: random.Random) -> bool:
    vs = VarSet(["x", "y"])
    p = MPoly.const(vs, 1)
    for _ in range(rng.randint(1, 3)):
        f = random_poly(rng, vs, 2, 3)
        if f.is_constant():
            continue
        p = p * f ** rng.randint(1, 3)
    if p.is_constant():
        return True
    red, _ = squarefree_part(p)
    again, profile = squarefree_part(red)
    return again == red and all(m == 1 for _, m in profile)


def property_snf(rng: random.Random) -> bool:
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    M = [[rng.randint(-6, 6) for _ in range(m)] for _ in range(n)]
    dec = smith_normal_form(M)
    U, D, V = [list(r) for r in dec.U], [list(r) for r in dec.D], [list(r) for r in dec.V]
    if int_matmul(int_matmul(U, M), V) != D:
        return False
    if abs(int_det(U)) != 1 or abs(int_det(V)) != 1:
        return False
    divs = [d for d in dec.divisors if d]
    return all(b % a == 0 for a, b in zip(divs, divs[1:]))


PROPERTIES = {
    "groebner_confluence": property_confluence,
    "elimination_order_independence": property_elimination,
    "squarefree_idempotence": property_squarefree,
    "snf_recomposition": property_snf,
}


def suite_properties(rec: _Recorder, seed: int = 20240613):
    for name, fn in PROPERTIES.items():
        rng = random.Random(f"{seed}:{name}")
        ok = sum(1 for _ in range(PROPERTY_INSTANCES) if fn(rng))
        rec.add(f"property[{name}]", f"{ok}/{PROPERTY_INSTANCES}", f"{PROPERTY_INSTANCES}/{PROPERTY_INSTANCES}")


SUITES: dict[str, Callable] = {
    "branch": suite_branch,
    "dual": suite_dual,
    "triangle": suite_triangle,
    "smoothness": suite_smoothness,
    "cusps": suite_cusps,
    "heisenberg": suite_heisenberg,
    "plucker": suite_plucker,
    "bidouble": suite_bidouble,
    "invariants": suite_invariants,
    "lattice": suite_lattice,
    "eigenspaces": suite_eigenspaces,
    "properties": suite_properties,
}


def run_suite(name: str, fixtures_text: str | None = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rec = _Recorder(name)
    fn = SUITES[name]
    if name == "heisenberg":
        rec.guarded("heisenberg", "suite completes", lambda: fn(rec, fixtures_text))
    else:
        rec.guarded(name, "suite completes", lambda: fn(rec))
    return rec.checks


def run_checks(only=None, fixtures_text: str | None = None) -> list[Check]:
    names = list(SUITES) if not only else list(only)
    out = []
    for n in names:
        out += run_suite(n, fixtures_text)
    return out
