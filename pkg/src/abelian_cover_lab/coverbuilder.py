"""Local equations of the quadruple cover attached to a point of the Pluecker conic.

The chart is X = 1 with coordinates (Y, Z, u, v, w); a translation T
replaces Y, Z by Y - T, Z - T in the building data.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import CycNum
from .heisenberg import CIJ_TABLE, PAIRS, ConicPoint
from .multipoly import MPoly, VarSet, format_poly

CHART_VARS = VarSet(["Y", "Z", "u", "v", "w"])
BASE_VARS = VarSet(["Y", "Z"])
HOMOGENEOUS_VARS = VarSet(["X", "Y", "Z"])
DEFORMATION_VARS = VarSet(["X", "Y", "Z", "u", "v", "w"])

_h, _q = Fraction(1, 2), Fraction(1, 4)

# a_k as linear combinations of the c_ij
A_TABLE = {
    1: {(2, 3): _h}, 2: {(1, 3): -1}, 3: {(1, 2): 1},
    4: {(2, 5): _q, (3, 4): -_h}, 5: {(1, 5): -_h, (2, 3): -_q}, 6: {(1, 4): 1},
    7: {(2, 6): _h, (3, 5): -_q}, 8: {(1, 6): -1}, 9: {(1, 5): _h, (2, 3): -_q},
    10: {(4, 5): 1}, 11: {(2, 5): -_h}, 12: {(2, 4): 1},
    13: {(4, 6): 1}, 14: {(2, 6): -_h, (3, 5): -_q}, 15: {(2, 5): _q, (3, 4): _h},
    16: {(5, 6): 1}, 17: {(3, 6): -1}, 18: {(3, 5): _h},
}

# b_k as signed sums of products a_i a_j
B_TABLE = {
    1: [(-1, 1, 5), (1, 2, 4), (-1, 2, 11), (-1, 3, 14), (1, 5, 5), (1, 6, 8)],
    2: [(1, 2, 10), (1, 3, 13), (-1, 4, 5), (-1, 6, 7)],
    3: [(1, 2, 13), (1, 3, 16), (-1, 4, 8), (-1, 7, 9)],
    4: [(-1, 1, 10), (1, 4, 4), (-1, 4, 11), (1, 5, 10), (1, 6, 13), (-1, 7, 12)],
    5: [(-1, 5, 13), (1, 8, 10), (1, 12, 17), (-1, 14, 15)],
    6: [(-1, 1, 16), (-1, 4, 17), (1, 7, 7), (-1, 7, 18), (1, 8, 13), (1, 9, 16)],
}

# F_k = monomial - (a u + a v + a w + b)
F_TABLE = {
    1: ("u", "u", (1, 2, 3)), 2: ("u", "v", (4, 5, 6)), 3: ("u", "w", (7, 8, 9)),
    4: ("v", "v", (10, 11, 12)), 5: ("v", "w", (13, 14, 15)), 6: ("w", "w", (16, 17, 18)),
}


@dataclass(frozen=True)
class BuildingData:
    c: dict
    translation: CycNum
    point: ConicPoint | None = None

    @property
    def varset(self) -> VarSet:
        return next(iter(self.c.values())).varset

    def __getitem__(self, ij) -> MPoly:
        return self.c[tuple(ij)]


@dataclass(frozen=True)
class CoverModel:
    building: BuildingData
    a_coeffs: tuple
    b_coeffs: tuple
    equations: tuple

    @property
    def varset(self) -> VarSet:
        return self.equations[0].varset

    def a(self, k: int) -> MPoly:
        return self.a_coeffs[k - 1]

    def b(self, k: int) -> MPoly:
        return self.b_coeffs[k - 1]

    def lines(self) -> list[str]:
        """Canonical printing: F1..F6, then a1..a18, then b1..b6."""
        out = [f"F{k} = {format_poly(f)}" for k, f in enumerate(self.equations, 1)]
        out += [f"a{k} = {format_poly(p)}" for k, p in enumerate(self.a_coeffs, 1)]
        out += [f"b{k} = {format_poly(p)}" for k, p in enumerate(self.b_coeffs, 1)]
        return out

    def serialize(self) -> str:
        return "\n".join(self.lines()) + "\n"


def building_data(pt: ConicPoint, T=0, homogeneous: bool = False) -> BuildingData:
    """The fifteen c_ij for ``pt``.

    In the chart X = 1 every Y, Z is replaced by Y - T, Z - T.  With
    ``homogeneous=True`` the forms are returned in X, Y, Z (no translation).
    """
    T = CycNum.coerce(T)
    coords = {"a": pt.a, "b": pt.b, "c": pt.c, "d": pt.d, "e": pt.e}
    if homogeneous:
        if T:
            raise ValueError("translation is only defined in the affine chart")
        vs = HOMOGENEOUS_VARS
        lin = {n: MPoly.var(vs, n) for n in vs}
    else:
        vs = BASE_VARS
        one = MPoly.const(vs, 1)
        lin = {"X": one, "Y": MPoly.var(vs, "Y") - T, "Z": MPoly.var(vs, "Z") - T}
    c = {}
    for ij in PAIRS:
        coord, sign, var = CIJ_TABLE[ij]
        c[ij] = lin[var] * (coords[coord] * sign)
    return BuildingData(c, T, pt)


def _a_coefficients(bd: BuildingData) -> list[MPoly]:
    vs = bd.varset
    out = []
    for k in range(1, 19):
        p = MPoly.zero(vs)
        for ij, coeff in A_TABLE[k].items():
            p = p + bd[ij] * CycNum(coeff)
        out.append(p)
    return out


def _b_coefficients(a: list[MPoly]) -> list[MPoly]:
    out = []
    for k in range(1, 7):
        p = MPoly.zero(a[0].varset)
        for sign, i, j in B_TABLE[k]:
            term = a[i - 1] * a[j - 1]
            p = p + term if sign > 0 else p - term
        out.append(p)
    return out


def cover_equations(bd: BuildingData) -> CoverModel:
    """Coefficients a1..a18, b1..b6 and the six local equations F1..F6."""
    a = _a_coefficients(bd)
    b = _b_coefficients(a)
    base = bd.varset
    if base == HOMOGENEOUS_VARS:
        vs = VarSet(tuple(base) + ("u", "v", "w"))
    else:
        vs = CHART_VARS
    lift = lambda p: p.to_varset(vs)
    u, v, w = (MPoly.var(vs, n) for n in "uvw")
    gen = {"u": u, "v": v, "w": w}
    eqs = []
    for k in range(1, 7):
        x, y, (i, j, l) = F_TABLE[k]
        rhs = lift(a[i - 1]) * u + lift(a[j - 1]) * v + lift(a[l - 1]) * w + lift(b[k - 1])
        eqs.append(gen[x] * gen[y] - rhs)
    return CoverModel(bd, tuple(a), tuple(b), tuple(eqs))


def cover_model(pt: ConicPoint, T=0) -> CoverModel:
    return cover_equations(building_data(pt, T))


def natural_deformation(alpha=(0, 0, 0), beta=(0, 0, 0), gamma=(0, 0, 0), delta=(0, 0, 0)) -> list[MPoly]:
    """The six equations of the natural deformation of the bidouble cover, as lhs - rhs."""
    vs = DEFORMATION_VARS
    X, Y, Z, u, v, w = MPoly.gens(vs)
    al = [CycNum.coerce(x) for x in alpha]
    be = [CycNum.coerce(x) for x in beta]
    ga = [CycNum.coerce(x) for x in gamma]
    de = [CycNum.coerce(x) for x in delta]

    def lin(i):  # a_i without the delta term, indices 1..3
        return X * al[i - 1] + Y * be[i - 1] + Z * ga[i - 1]

    L1 = X + lin(1)
    L2 = Z + lin(2)
    L3 = Y + lin(3)
    d1, d2, d3 = de
    return [
        u * u - (L3 + w * d3) * (L2 + v * d2),
        u * v - (L3 * w + w * w * d3),
        u * w - (L2 * v + v * v * d2),
        v * v - (L1 + u * d1) * (L3 + w * d3),
        v * w - (L1 * u + u * u * d1),
        w * w - (L1 + u * d1) * (L2 + v * d2),
    ]


def bidouble_equations(chart: bool = True) -> list[MPoly]:
    """u^2 = YZ, uv = Yw, uw = Zv, v^2 = XY, vw = Xu, w^2 = XZ (X = 1 if ``chart``)."""
    eqs = natural_deformation()
    if chart:
        return [e.subs({"X": 1}, CHART_VARS) for e in eqs]
    return eqs
