"""Ramification and branch curves of the cover, the reference sextic, the
dual Hesse sextics, and local classification of plane-curve singularities."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .coverbuilder import CoverModel
from .exact import ONE, ZERO, CycNum, FieldMatrix, field_kernel, omega_power
from .multipoly import (DEFAULT_STEP_BUDGET, GREVLEX, LEX, IdealHandle, MPoly, VarSet,
                        eliminate, exact_divide, format_poly, groebner, homogeneous_dimension_projective,
                        ideal_dimension, minors, quotient_dimension, normalize_scalar, scalar_ratio, squarefree_part)

PLANE_VARS = VarSet(["X", "Y", "Z"])

W = omega_power(1)
W2 = omega_power(2)


class StructuralError(RuntimeError):
    """The elimination ideal is not principal, so no single branch equation exists."""


# ---------------------------------------------------------------------------
# points and curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    def __post_init__(self):
        cs = tuple(CycNum.coerce(c) for c in self.coords)
        if len(cs) != 3 or not any(cs):
            raise ValueError("a projective point needs three coordinates, not all zero")
        last = next(c for c in reversed(cs) if c)
        object.__setattr__(self, "coords", tuple(c / last for c in cs))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self) -> str:
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class PlaneCurve:
    form: MPoly
    degree: int = field(default=-1)

    def __post_init__(self):
        f = self.form
        if f.varset != PLANE_VARS:
            f = f.to_varset(PLANE_VARS)
            object.__setattr__(self, "form", f)
        if not f:
            raise ValueError("the zero form is not a curve")
        if not f.is_homogeneous():
            raise ValueError("plane curve forms must be homogeneous")
        d = f.total_degree()
        if self.degree >= 0 and self.degree != d:
            raise ValueError(f"form has degree {d}, not {self.degree}")
        object.__setattr__(self, "degree", d)

    def at(self, p: ProjPoint) -> CycNum:
        return self.form.evaluate(dict(zip(PLANE_VARS, p.coords)))

    def normalized(self) -> MPoly:
        return normalize_scalar(self.form)

    def same_curve(self, other: PlaneCurve) -> bool:
        return self.normalized() == other.normalized()

    def __str__(self) -> str:
        return format_poly(self.form)


def _c(x) -> CycNum:
    if isinstance(x, str):
        from .multipoly import parse_number
        return parse_number(x)
    if isinstance(x, Fraction):
        return CycNum(x)
    return CycNum.coerce(x)


def _symmetric_sextics():
    X, Y, Z = MPoly.gens(PLANE_VARS)
    s1 = X ** 6 + Y ** 6 + Z ** 6
    s2 = X ** 3 * Y ** 3 + X ** 3 * Z ** 3 + Y ** 3 * Z ** 3
    s3 = X * Y * Z * (X ** 3 + Y ** 3 + Z ** 3)
    s4 = X ** 2 * Y ** 2 * Z ** 2
    return s1, s2, s3, s4


def reference_sextic(a, c) -> PlaneCurve:
    """The branch sextic of the cover at [a:c], evaluated in closed form."""
    a, c = _c(a), _c(c)
    if not a and not c:
        raise ValueError("(a, c) must not both vanish")
    F = Fraction
    s1, s2, s3, s4 = _symmetric_sextics()
    k1 = a ** 8 * c ** 4
    k2 = a ** 2 * c * (a ** 9 * CycNum(F(-4, 27)) + a ** 6 * c ** 3 * CycNum(F(-2, 9))
                       + a ** 3 * c ** 6 * CycNum(F(-64, 9)) + c ** 9 * CycNum(F(256, 27)))
    k3 = a ** 4 * c ** 2 * (a ** 6 * CycNum(F(-2, 3)) + a ** 3 * c ** 3 * CycNum(F(16, 3))
                            + c ** 6 * CycNum(F(-32, 3)))
    k4 = (a ** 12 * CycNum(F(-1, 27)) + a ** 9 * c ** 3 * CycNum(F(-92, 27))
          + a ** 6 * c ** 6 * CycNum(F(112, 9)) + a ** 3 * c ** 9 * CycNum(F(256, 27))
          + c ** 12 * CycNum(F(-256, 27)))
    return PlaneCurve(s1 * k1 + s2 * k2 + s3 * k3 + s4 * k4, 6)


def hesse_dual(m0, m1, as_printed: bool = False) -> PlaneCurve:
    """Dual sextic of the Hesse cubic m0(x^3+y^3+z^3) + 6 m1 xyz.

    The X^3Y^3 coefficient is -m0(2 m0^3 + 32 m1^3), the homogeneous
    reading; ``as_printed=True`` uses 2 m0^2 instead, which is not
    homogeneous in (m0, m1) and only agrees when m0 is 0 or 1.
    """
    m0, m1 = _c(m0), _c(m1)
    if not m0 and not m1:
        raise ValueError("(m0, m1) must not both vanish")
    s1, s2, s3, s4 = _symmetric_sextics()
    inner = m0 ** 2 * 2 if as_printed else m0 ** 3 * 2
    k2 = -(m0 * (inner + m1 ** 3 * 32))
    k3 = -(m0 ** 2 * m1 ** 2 * 24)
    k4 = -(m0 ** 3 * m1 * 24 + m1 ** 4 * 48)
    return PlaneCurve(s1 * m0 ** 4 + s2 * k2 + s3 * k3 + s4 * k4, 6)


def hesse_cubic(m0, t1) -> PlaneCurve:
    """m0(x^3+y^3+z^3) + t1 xyz in coordinates X, Y, Z."""
    X, Y, Z = MPoly.gens(PLANE_VARS)
    return PlaneCurve((X ** 3 + Y ** 3 + Z ** 3) * _c(m0) + X * Y * Z * _c(t1), 3)


HESSE_BASE_POINTS = [
    ProjPoint((0, 1, -ONE)), ProjPoint((0, 1, -W)), ProjPoint((0, 1, -W2)),
    ProjPoint((1, 0, -ONE)), ProjPoint((1, 0, -W)), ProjPoint((1, 0, -W2)),
    ProjPoint((1, -ONE, 0)), ProjPoint((1, -W, 0)), ProjPoint((1, -W2, 0)),
]


def hesse_flex_duals(m0, m1) -> list[ProjPoint]:
    """Tangent lines at the nine flexes of m0(x^3+y^3+z^3) + 6 m1 xyz, as dual points."""
    cubic = hesse_cubic(m0, _c(m1) * 6).form
    grads = [cubic.diff(n) for n in PLANE_VARS]
    out = []
    for p in HESSE_BASE_POINTS:
        vals = dict(zip(PLANE_VARS, p.coords))
        g = tuple(d.evaluate(vals) for d in grads)
        if not any(g):
            raise ValueError(f"the cubic is singular at the base point {p}")
        out.append(ProjPoint(g))
    return out


# ---------------------------------------------------------------------------
# singularities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularityReport:
    point: ProjPoint
    kind: str
    quadratic_rank: int
    cusp_direction_ok: bool | None = None

    def __str__(self) -> str:
        return f"{self.point} {self.kind} (rank {self.quadratic_rank})"


def _local_expansion(curve: PlaneCurve, p: ProjPoint):
    """Homogeneous parts of the curve around ``p`` in the chart where p has a unit coordinate."""
    k = max(i for i, c in enumerate(p.coords) if c)
    others = [i for i in range(3) if i != k]
    loc = VarSet(["s", "t"])
    s, t = MPoly.gens(loc)
    images = {}
    for n, i in enumerate(others):
        images[PLANE_VARS[i]] = (s, t)[n] + p.coords[i]
    images[PLANE_VARS[k]] = MPoly.const(loc, 1)
    f = curve.form.subs(images, loc)
    parts: dict[int, MPoly] = {}
    for e, c in f.terms.items():
        d = sum(e)
        parts[d] = parts.get(d, MPoly.zero(loc)) + MPoly._raw(loc, {e: c})
    return parts, loc


def classify_singularity(curve: PlaneCurve, p: ProjPoint) -> SingularityReport:
    if curve.at(p):
        raise ValueError(f"{p} does not lie on the curve")
    parts, loc = _local_expansion(curve, p)
    if parts.get(1):
        return SingularityReport(p, "smooth", -1)
    f2 = parts.get(2, MPoly.zero(loc))
    A = f2.coefficient((2, 0))
    B = f2.coefficient((1, 1))
    C = f2.coefficient((0, 2))
    if not f2:
        return SingularityReport(p, "other", 0)
    disc = B * B - A * C * 4
    if disc:
        return SingularityReport(p, "node", 2)
    # f2 = lambda * l^2; take a direction on which l vanishes
    if A:
        direction = (-B, A * 2)
    else:
        direction = (ONE, ZERO)
    f3 = parts.get(3, MPoly.zero(loc))
    ok = bool(f3.evaluate({"s": direction[0], "t": direction[1]})) if f3 else False
    return SingularityReport(p, "ordinary_cusp" if ok else "other", 1, ok)


def singular_scheme_dimension(curve: PlaneCurve, budget: int = DEFAULT_STEP_BUDGET) -> int:
    """Projective dimension of V(f, f_X, f_Y, f_Z); -1 for a smooth curve."""
    f = curve.form
    gens = [f] + [f.diff(n) for n in PLANE_VARS]
    return homogeneous_dimension_projective(IdealHandle(tuple(g for g in gens if g) or (f,)), budget)


CUBIC_MONOMIALS = [e for e in itertools.product(range(4), repeat=3) if sum(e) == 3]
CUBIC_MONOMIALS.sort(key=lambda e: GREVLEX.key_function(PLANE_VARS)(e), reverse=True)


def cubics_through(points) -> list[PlaneCurve]:
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    rows = []
    for p in points:
        row = []
        for e in CUBIC_MONOMIALS:
            v = ONE
            for c, k in zip(p.coords, e):
                v = v * c ** k
            row.append(v)
        rows.append(row)
    kernel = field_kernel(FieldMatrix.from_rows(rows))
    out = []
    for vec in kernel:
        terms = {e: vec[i, 0] for i, e in enumerate(CUBIC_MONOMIALS) if vec[i, 0]}
        out.append(PlaneCurve(MPoly(PLANE_VARS, terms), 3))
    return out


# ---------------------------------------------------------------------------
# special loci in [a:c]
# ---------------------------------------------------------------------------

T1 = [(ONE, ONE), (W, ONE), (W2, ONE), (ONE, ZERO)]
T2 = [(CycNum(-2), ONE), (W * -2, ONE), (W2 * -2, ONE), (ZERO, ONE)]


def same_projective(p, q) -> bool:
    return p[0] * q[1] == p[1] * q[0]


def in_T1(a, c) -> bool:
    return any(same_projective((_c(a), _c(c)), t) for t in T1)


def in_T2(a, c) -> bool:
    return any(same_projective((_c(a), _c(c)), t) for t in T2)


# ---------------------------------------------------------------------------
# the cover pipeline
# ---------------------------------------------------------------------------

def _jacobian(polys, names):
    return [[f.diff(n) for n in names] for f in polys]


def _dedupe(polys):
    seen, out = set(), []
    for p in polys:
        if not p:
            continue
        key = normalize_scalar(p)
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def ramification_ideal(cm: CoverModel) -> IdealHandle:
    """F1..F6 together with the 3x3 minors of their Jacobian in u, v, w."""
    F = list(cm.equations)
    gens = F + _dedupe(minors(_jacobian(F, "uvw"), 3))
    return IdealHandle(tuple(gens))


def local_model_singular_locus(cm: CoverModel, budget: int = DEFAULT_STEP_BUDGET) -> int:
    """Dimension of the singular locus of the local model; -1 if it is smooth."""
    F = list(cm.equations)
    gens = F + _dedupe(minors(_jacobian(F, cm.varset), 3))
    return ideal_dimension(IdealHandle(tuple(gens)), budget)


@dataclass(frozen=True)
class BranchResult:
    """Branch data in the chart X = 1.

    ``multiplicity`` is the degree of the ramification scheme over its image
    (measured on generic lines), ``profile`` the squarefree profile of the
    eliminant itself and ``extraneous`` whatever is left of the eliminant
    after removing the powers of ``reduced`` it contains.
    """
    eliminant: MPoly
    reduced: MPoly
    multiplicity: int
    homogenized: PlaneCurve
    profile: tuple
    extraneous: MPoly | None = None

    @property
    def reduced_curve(self) -> PlaneCurve:
        """Squarefree part of the projective sextic (sees the line X = 0 too)."""
        return PlaneCurve(squarefree_part(self.homogenized.form)[0])


def _to_plane(p: MPoly, degree: int | None = None) -> MPoly:
    q = p.to_varset(["X", "Y", "Z"])
    return q.homogenize("X", degree if degree is not None else q.total_degree())


# lines Y = alpha Z + beta used to measure the degree of R over its image
PROBE_LINES = [(Fraction(3, 7), Fraction(5, 11)), (Fraction(-2, 5), Fraction(7, 3))]


def pushforward_multiplicity(ram: IdealHandle, reduced: MPoly, budget: int = DEFAULT_STEP_BUDGET) -> int:
    """Coefficient m with phi_*[R] = m [B'] where B' = V(reduced).

    On a line L in general position the scheme R cut by phi^*L has length
    m times the number of points of B' on L.
    """
    vs = ram.varset
    Y, Z = MPoly.var(vs, "Y"), MPoly.var(vs, "Z")
    found = set()
    for alpha, beta in PROBE_LINES:
        line = Y - Z * CycNum(alpha) - CycNum(beta)
        length = quotient_dimension(IdealHandle(ram.generators + (line,)), budget)
        zs = VarSet(["Z"])
        restricted = reduced.subs({"Y": MPoly.var(zs, "Z") * CycNum(alpha) + CycNum(beta)}, zs)
        points = restricted.total_degree()
        if points <= 0 or length % points:
            raise StructuralError(f"probe line Y = {alpha}*Z + {beta} is not in general position")
        found.add(length // points)
    if len(found) != 1:
        raise StructuralError(f"inconsistent multiplicities {sorted(found)} on probe lines")
    return found.pop()


def branch_curve(cm: CoverModel, budget: int = DEFAULT_STEP_BUDGET) -> BranchResult:
    """Eliminate u, v, w from the ramification ideal and recover the branch divisor."""
    if cm.building.translation:
        raise ValueError("branch_curve expects an untranslated model (T = 0)")
    ram = ramification_ideal(cm)
    J = eliminate(ram, ["u", "v", "w"], budget=budget)
    gb = J.groebner(budget)
    if not gb:
        raise StructuralError("elimination ideal is zero: the ramification locus dominates the plane")
    if len(gb) != 1:
        raise StructuralError("elimination ideal is not principal: "
                              + "; ".join(format_poly(g) for g in gb))
    elim = normalize_scalar(gb[0])
    if elim.is_constant():
        raise StructuralError("elimination ideal is the unit ideal: no ramification")
    reduced, profile = squarefree_part(elim, budget)
    rest = elim
    while True:
        try:
            rest = exact_divide(rest, reduced)
        except ArithmeticError:
            break
    extraneous = None if rest.is_constant() else normalize_scalar(rest)
    mult = pushforward_multiplicity(ram, reduced, budget)
    power = reduced ** mult
    homog = PlaneCurve(_to_plane(power, max(6, power.total_degree())))
    return BranchResult(elim, reduced, mult, homog, tuple(profile), extraneous)


# ---------------------------------------------------------------------------
# linear factors over Q(omega)
# ---------------------------------------------------------------------------

def _integer_divisors(n: int) -> list[int]:
    n = abs(int(n))
    if n == 0:
        return [0]
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def _rational_roots(coeffs: list) -> list[Fraction]:
    """Rational roots of sum coeffs[k] x^k (rational coefficients)."""
    cs = [Fraction(int(c.numerator), int(c.denominator)) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots = set()
    while cs[0] == 0:
        roots.add(Fraction(0))
        cs = cs[1:]
        if len(cs) <= 1:
            return sorted(roots)
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    for p in _integer_divisors(ints[0]):
        for q in _integer_divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = 0
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


def _solve_rational(polys: list[MPoly], names: list[str], budget: int) -> list[dict]:
    """All rational solutions of a zero-dimensional system (lex triangular solve)."""
    if not names:
        return [{}] if all(p.is_constant() and not p.constant_value() for p in polys) else []
    polys = [p for p in polys if p]
    if not polys:
        raise ValueError("system is not zero-dimensional")
    gb = groebner(polys, LEX, budget)
    if any(g.is_constant() for g in gb):
        return []
    last = names[-1]
    uni = [g for g in gb if g.support_vars() <= {last}]
    if not uni:
        raise ValueError("system is not zero-dimensional")
    g = uni[0]
    idx = g.varset.index(last)
    coeffs = [0] * (g.total_degree() + 1)
    for e, c in g.terms.items():
        if not c.is_rational():
            raise ValueError("expected rational coefficients")
        coeffs[e[idx]] = c.re0
    sols = []
    sub_vs = VarSet(names[:-1])
    for r in _rational_roots(coeffs):
        reduced = [p.subs({last: CycNum(r)}).to_varset(sub_vs) if sub_vs else p.subs({last: CycNum(r)})
                   for p in gb]
        if not sub_vs:
            if all(not p for p in reduced):
                sols.append({last: r})
            continue
        for s in _solve_rational(reduced, list(names[:-1]), budget):
            s = dict(s)
            s[last] = r
            sols.append(s)
    return sols


def linear_factors(curve: PlaneCurve, budget: int = DEFAULT_STEP_BUDGET) -> list[MPoly]:
    """Distinct linear forms over Q(omega) dividing the curve's equation."""
    f = curve.form
    X, Y, Z = MPoly.gens(PLANE_VARS)
    found = []
    unk = VarSet(["p0", "p1", "q0", "q1", "Y", "Z"])
    p0, p1, q0, q1, y, z = MPoly.gens(unk)
    p = p0 + p1 * W
    q = q0 + q1 * W

    def split_conditions(expr: MPoly, keep: list[str]):
        # coefficients in the plane variables, split into rational and omega parts
        k = [unk.index(n) for n in keep]
        groups: dict = {}
        for e, c in expr.terms.items():
            key = tuple(e[i] for i in range(len(unk)) if unk[i] in ("Y", "Z", "X"))
            groups.setdefault(key, {})
            rest = tuple(e[i] for i in k)
            groups[key][rest] = groups[key].get(rest, ZERO) + c
        out = []
        vs = VarSet(keep)
        for mono, terms in groups.items():
            r0 = {e: CycNum(c.re0) for e, c in terms.items() if c.re0}
            r1 = {e: CycNum(c.re1) for e, c in terms.items() if c.re1}
            out += [MPoly(vs, r0), MPoly(vs, r1)]
        return [o for o in out if o]

    # X = pY + qZ
    expr = f.subs({"X": p * y + q * z, "Y": y, "Z": z}, unk)
    conds = split_conditions(expr, ["p0", "p1", "q0", "q1"])
    if not conds:
        raise ValueError("the curve contains every line through the chart")
    for s in _solve_rational(conds, ["p0", "p1", "q0", "q1"], budget):
        pv = CycNum(s["p0"], s["p1"])
        qv = CycNum(s["q0"], s["q1"])
        found.append(X - Y * pv - Z * qv)
    # Y = qZ
    unk2 = VarSet(["q0", "q1", "X", "Z"])
    a0, a1, x2, z2 = MPoly.gens(unk2)
    expr = f.subs({"X": x2, "Y": (a0 + a1 * W) * z2, "Z": z2}, unk2)
    groups: dict = {}
    for e, c in expr.terms.items():
        groups.setdefault(e[2:], {})
        groups[e[2:]][e[:2]] = groups[e[2:]].get(e[:2], ZERO) + c
    vs2 = VarSet(["q0", "q1"])
    conds = []
    for terms in groups.values():
        conds.append(MPoly(vs2, {e: CycNum(c.re0) for e, c in terms.items() if c.re0}))
        conds.append(MPoly(vs2, {e: CycNum(c.re1) for e, c in terms.items() if c.re1}))
    conds = [c for c in conds if c]
    if conds:
        for s in _solve_rational(conds, ["q0", "q1"], budget):
            found.append(Y - Z * CycNum(s["q0"], s["q1"]))
    # Z
    try:
        exact_divide(f, Z)
        found.append(Z)
    except ArithmeticError:
        pass
    out = []
    for l in found:
        n = normalize_scalar(l)
        if n not in out:
            out.append(n)
    return out


def is_triangle(curve: PlaneCurve, budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """Cubic splitting into three distinct lines over Q(omega)."""
    if curve.degree != 3:
        return False
    lines = linear_factors(curve, budget)
    if len(lines) != 3:
        return False
    prod = lines[0] * lines[1] * lines[2]
    return scalar_ratio(curve.form, prod) is not None
