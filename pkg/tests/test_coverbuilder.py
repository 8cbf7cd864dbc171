from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from abelian_cover_lab.coverbuilder import (CHART_VARS, DEFORMATION_VARS, BuildingData, building_data,
                                            cover_equations, cover_model, natural_deformation)
from abelian_cover_lab.exact import CycNum
from abelian_cover_lab.heisenberg import INFINITY, PAIRS, ConicPoint, conic_point, plucker_residuals
from abelian_cover_lab.multipoly import MPoly, format_poly, parse_poly


def chart(text):
    return parse_poly(text, CHART_VARS)


def test_building_data_origin():
    bd = building_data(conic_point((0, 1)))
    Y, Z = (MPoly.var(bd.varset, n) for n in "YZ")
    assert bd[(1, 4)] == Y
    assert bd[(1, 6)] == -Z
    assert bd[(4, 6)] == MPoly.const(bd.varset, 1)
    nonzero = {ij for ij in PAIRS if bd[ij]}
    assert nonzero == {(1, 4), (1, 6), (4, 6)}


def test_building_data_one_two():
    bd = building_data(conic_point((1, 2)))
    Y, Z = (MPoly.var(bd.varset, n) for n in "YZ")
    assert bd[(1, 2)] == Z
    assert bd[(2, 3)] == MPoly.const(bd.varset, Fraction(-1, 2))
    assert bd[(4, 5)] == Y
    assert bd[(1, 3)] == -Y


def test_building_data_translation():
    bd = building_data(conic_point((0, 1)), T=5)
    assert bd[(1, 4)] == MPoly.var(bd.varset, "Y") - 5


def test_bidouble_model():
    cm = cover_model(conic_point((0, 1)))
    want = ["u^2 - Y*Z", "u*v - Y*w", "u*w - Z*v", "v^2 - Y", "v*w - u", "w^2 - Z"]
    assert list(cm.equations) == [chart(t) for t in want]


def test_infinity_model_has_only_e_terms():
    cm = cover_model(conic_point(INFINITY))
    assert cm.building.point == ConicPoint(0, 0, 0, 0, 1)
    for f in cm.equations:
        assert f.support_vars() <= set(CHART_VARS)
    nonzero_c = [ij for ij in PAIRS if cm.building[ij]]
    assert sorted(nonzero_c) == [(2, 3), (2, 5), (3, 5)]


def test_zero_building_data():
    vs = building_data(conic_point((0, 1))).varset
    zero = BuildingData({ij: MPoly.zero(vs) for ij in PAIRS}, CycNum(0))
    cm = cover_equations(zero)
    assert [format_poly(f) for f in cm.equations] == ["u^2", "u*v", "u*w", "v^2", "v*w", "w^2"]


def test_serialization_order():
    lines = cover_model(conic_point((0, 1))).lines()
    assert len(lines) == 6 + 18 + 6
    assert lines[0] == "F1 = -Y*Z + u^2"
    assert lines[6].startswith("a1 = ") and lines[24].startswith("b1 = ")


def test_homogeneous_model():
    cm = cover_equations(building_data(conic_point((0, 1)), homogeneous=True))
    assert format_poly(cm.equations[3]) == format_poly(parse_poly("v^2 - X*Y", cm.varset))


def test_natural_deformation_zero():
    eqs = natural_deformation()
    want = ["u^2 - Y*Z", "u*v - Y*w", "u*w - Z*v", "v^2 - X*Y", "v*w - X*u", "w^2 - X*Z"]
    assert eqs == [parse_poly(t, DEFORMATION_VARS) for t in want]


def test_natural_deformation_delta3():
    eqs = natural_deformation(delta=(0, 0, 2))
    assert eqs[0] == parse_poly("u^2 - (Y + 2*w)*Z", DEFORMATION_VARS)
    assert eqs[1] == parse_poly("u*v - Y*w - 2*w^2", DEFORMATION_VARS)


def test_natural_deformation_alpha1():
    eqs = natural_deformation(alpha=(3, 0, 0))
    assert eqs[4] == parse_poly("v*w - (X + 3*X)*u", DEFORMATION_VARS)


points = st.tuples(st.integers(-3, 3), st.integers(1, 3))


@given(points)
def test_pluecker_round_trip(ac):
    bd = building_data(conic_point(ac), homogeneous=True)
    assert all(not r for r in plucker_residuals(bd.c))


@given(points, st.integers(-3, 3))
def test_translation_equivariance(ac, T):
    pt = conic_point(ac)
    base = cover_model(pt)
    moved = cover_model(pt, T)
    Y, Z = MPoly.var(CHART_VARS, "Y"), MPoly.var(CHART_VARS, "Z")
    for f0, fT in zip(base.equations, moved.equations):
        assert f0.subs({"Y": Y - T, "Z": Z - T}, CHART_VARS) == fT
