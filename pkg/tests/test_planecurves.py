from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import settings
from hypothesis import strategies as st

from abelian_cover_lab.coverbuilder import CHART_VARS, cover_model
from abelian_cover_lab.exact import CycNum, omega_power
from abelian_cover_lab.heisenberg import INFINITY, conic_point
from abelian_cover_lab.multipoly import (IdealHandle, MPoly, minors, normalize_scalar, parse_poly,
                                         scalar_ratio)
from abelian_cover_lab.planecurves import (HESSE_BASE_POINTS, PLANE_VARS, T1, T2, PlaneCurve, ProjPoint,
                                           StructuralError, branch_curve, classify_singularity, cubics_through,
                                           hesse_cubic, hesse_dual, hesse_flex_duals, in_T1, in_T2, is_triangle,
                                           linear_factors, local_model_singular_locus, ramification_ideal,
                                           reference_sextic, singular_scheme_dimension)

W, W2 = omega_power(1), omega_power(2)


def plane(text):
    return parse_poly(text, PLANE_VARS)


# -- points and curves ----------------------------------------------------------

def test_projpoint_normalization():
    p = ProjPoint((2, 4, 2))
    assert p.coords == (1, 2, 1)
    assert ProjPoint((3, 3, 0)).coords == (1, 1, 0)
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0))


def test_planecurve_validation():
    with pytest.raises(ValueError):
        PlaneCurve(plane("X^2 + Y"))
    with pytest.raises(ValueError):
        PlaneCurve(MPoly.zero(PLANE_VARS))
    with pytest.raises(ValueError):
        PlaneCurve(plane("X^2"), 3)
    assert PlaneCurve(plane("X*Y*Z")).degree == 3


# -- the closed-form sextics ------------------------------------------------------

def test_reference_sextic_at_origin():
    assert reference_sextic(0, 1).form == plane("-256/27*X^2*Y^2*Z^2")


def test_reference_sextic_at_infinity():
    assert reference_sextic(1, 0).form == plane("-1/27*X^2*Y^2*Z^2")


def test_reference_sextic_at_one_one():
    f = reference_sextic(1, 1).form
    assert f.coefficient((6, 0, 0)) == 1
    assert f.coefficient((3, 3, 0)) == Fraction(-4, 27) - Fraction(2, 9) - Fraction(64, 9) + Fraction(256, 27)


def test_reference_sextic_rejects_zero():
    with pytest.raises(ValueError):
        reference_sextic(0, 0)


def test_hesse_dual_examples():
    assert hesse_dual(1, 0).form == plane("X^6 + Y^6 + Z^6 - 2*(X^3*Y^3 + X^3*Z^3 + Y^3*Z^3)")
    assert hesse_dual(0, 1).form == plane("-48*X^2*Y^2*Z^2")


def test_hesse_dual_is_homogeneous_in_parameters():
    # scaling (m0, m1) by s scales the form by s^4
    assert hesse_dual(2, 6).form == hesse_dual(1, 3).form * 16
    assert hesse_dual(2, 6, as_printed=True).form != hesse_dual(1, 3, as_printed=True).form * 16


def test_hesse_dual_vanishes_on_tangent_lines():
    # the dual of a smooth cubic contains the tangent line at every point of the cubic
    for m0, m1 in [(1, 0), (1, 1), (2, -1), (1, Fraction(-3, 2))]:
        dual = hesse_dual(m0, m1)
        assert all(not dual.at(p) for p in hesse_flex_duals(m0, m1))


def test_flex_duals_examples():
    pts = hesse_flex_duals(1, 0)
    assert len(pts) == 9
    assert pts[HESSE_BASE_POINTS.index(ProjPoint((1, -1, 0)))] == ProjPoint((1, 1, 0))
    assert hesse_flex_duals(0, 1)[0] == ProjPoint((1, 0, 0))


def test_flex_duals_singular_member():
    # the zero cubic has no flexes
    with pytest.raises(ValueError):
        hesse_flex_duals(0, 0)


def test_base_points_are_flexes():
    for p in HESSE_BASE_POINTS:
        assert not hesse_cubic(1, 0).at(p)
        assert not hesse_cubic(0, 1).at(p)


# -- singularities -------------------------------------------------------------------

def test_cusp_normal_form():
    r = classify_singularity(PlaneCurve(plane("Z*Y^2 - X^3")), ProjPoint((0, 0, 1)))
    assert r.kind == "ordinary_cusp" and r.quadratic_rank == 1 and r.cusp_direction_ok


def test_node_normal_form():
    r = classify_singularity(PlaneCurve(plane("Z*(Y^2 - X^2) - X^3")), ProjPoint((0, 0, 1)))
    assert r.kind == "node" and r.quadratic_rank == 2


def test_other_and_smooth():
    assert classify_singularity(PlaneCurve(plane("Z^2*Y^2 - X^4")), ProjPoint((0, 0, 1))).kind == "other"
    assert classify_singularity(PlaneCurve(plane("Y*Z^2 - X^3")), ProjPoint((0, 0, 1))).kind == "smooth"
    assert classify_singularity(PlaneCurve(plane("X^3 + Y^3 + X*Y*Z")), ProjPoint((0, 0, 1))).kind == "node"
    assert classify_singularity(PlaneCurve(plane("X^3 - Y^3")), ProjPoint((0, 0, 1))).kind == "other"


def test_point_off_curve():
    with pytest.raises(ValueError):
        classify_singularity(PlaneCurve(plane("X*Y - Z^2")), ProjPoint((1, 1, 0)))


def test_cusps_of_dual_hesse_sextic():
    curve = hesse_dual(1, Fraction(-3, 2))
    pts = hesse_flex_duals(1, Fraction(-3, 2))
    assert [classify_singularity(curve, p).kind for p in pts] == ["ordinary_cusp"] * 9
    assert singular_scheme_dimension(curve) == 0
    assert len(cubics_through(pts)) == 1


def test_smooth_cubic_has_no_singular_scheme():
    assert singular_scheme_dimension(hesse_cubic(1, 1)) == -1
    assert singular_scheme_dimension(PlaneCurve(plane("X*Y*Z"))) == 0
    assert singular_scheme_dimension(PlaneCurve(plane("(X + Y)^2*Z"))) == 1


@given(st.fractions(min_value=-4, max_value=4, max_denominator=4), st.sampled_from([1, 2, 3]))
@settings(max_examples=50)
def test_cusp_count_for_smooth_members(m1, m0):
    assume(m1 != Fraction(-m0, 2) and m1 != 0)
    curve = hesse_dual(m0, m1)
    pts = hesse_flex_duals(m0, m1)
    assert all(classify_singularity(curve, p).kind == "ordinary_cusp" for p in pts)
    assert singular_scheme_dimension(curve) == 0


def test_cubics_through_general_points():
    pts8 = [ProjPoint(p) for p in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (2, -1, 5), (3, 7, -2),
                                    (-4, 1, 9)]]
    assert len(cubics_through(pts8)) >= 2
    pts10 = pts8 + [ProjPoint((5, 11, 13)), ProjPoint((-7, 2, 17))]
    assert len(cubics_through(pts10)) == 0
    for c in cubics_through(pts8):
        assert all(not c.at(p) for p in pts8)
    with pytest.raises(ValueError):
        cubics_through([])


# -- linear factors --------------------------------------------------------------

def test_linear_factors_over_omega():
    lines = linear_factors(PlaneCurve(plane("X^3 + Y^3 + Z^3 - 3*X*Y*Z")))
    assert len(lines) == 3
    assert plane("X + Y + Z") in lines
    assert is_triangle(PlaneCurve(plane("X*Y*Z")))
    assert not is_triangle(PlaneCurve(plane("X^2*Y")))
    assert not is_triangle(hesse_cubic(1, 1))
    assert linear_factors(PlaneCurve(plane("X^2 + Y^2 - Z^2"))) == []


# -- the cover pipeline -------------------------------------------------------------

def test_ramification_ideal_contents():
    cm = cover_model(conic_point((0, 1)))
    R = ramification_ideal(cm)
    assert R.generators[0] == parse_poly("u^2 - Y*Z", CHART_VARS)
    jac = [[f.diff(n) for n in "uvw"] for f in cm.equations]
    ms = minors(jac, 3)
    assert len(ms) == 20
    assert all(R.contains(m) for m in ms)


def test_bidouble_jacobian_rank_at_rational_point():
    cm = cover_model(conic_point((0, 1)))
    jac = [[f.diff(n) for n in "uvw"] for f in cm.equations]
    point = {n: 1 for n in CHART_VARS}
    assert any(m.evaluate(point) for m in minors(jac, 3))


def test_ramification_translation():
    pt = conic_point((1, 2))
    R0, R1 = ramification_ideal(cover_model(pt)), ramification_ideal(cover_model(pt, 1))
    Y, Z = MPoly.var(CHART_VARS, "Y"), MPoly.var(CHART_VARS, "Z")
    moved = IdealHandle(tuple(g.subs({"Y": Y - 1, "Z": Z - 1}, CHART_VARS) for g in R0.generators))
    assert moved.groebner() == R1.groebner()


def test_branch_at_origin():
    br = branch_curve(cover_model(conic_point((0, 1))))
    assert normalize_scalar(br.homogenized.form) == plane("X^2*Y^2*Z^2")
    assert br.multiplicity == 2
    assert br.reduced_curve.normalized() == plane("X*Y*Z")
    assert br.extraneous is None


def test_branch_generic_matches_reference():
    br = branch_curve(cover_model(conic_point((1, 2))))
    assert br.multiplicity == 1 and br.extraneous is None
    assert scalar_ratio(br.homogenized.form, reference_sextic(1, 2).form) is not None
    assert br.homogenized.degree == 6


def test_branch_rejects_translation():
    with pytest.raises(ValueError):
        branch_curve(cover_model(conic_point((1, 2)), 1))


def test_branch_at_infinity_is_not_principal():
    # the local model at [1:0] is singular along a curve; elimination is degenerate there
    try:
        br = branch_curve(cover_model(conic_point(INFINITY)))
    except StructuralError:
        return
    assert br.homogenized.degree >= 6


@pytest.mark.parametrize("a", [CycNum(-2), W * -2, W2 * -2, CycNum(0)])
def test_t2_degenerations(a):
    br = branch_curve(cover_model(conic_point((a, 1))))
    red = br.reduced_curve
    assert br.multiplicity == 2
    assert red.degree == 3
    assert is_triangle(red)
    assert scalar_ratio(br.homogenized.form, reference_sextic(a, 1).form) is not None


def test_special_loci_constants():
    assert [(str(a), str(c)) for a, c in T1] == [("1", "1"), ("zeta", "1"), ("-1 - zeta", "1"), ("1", "0")]
    assert in_T1(2, 2) and in_T1(W, 1) and in_T1(5, 0)
    assert in_T2(-4, 2) and in_T2(0, 3) and not in_T2(1, 2)
    assert not in_T1(-2, 1)
    assert len(T2) == 4


def test_local_model_dichotomy_examples():
    assert local_model_singular_locus(cover_model(conic_point((1, 2)))) == -1
    assert local_model_singular_locus(cover_model(conic_point((0, 1)))) == -1
    assert local_model_singular_locus(cover_model(conic_point((1, 1)))) == 1


@given(st.integers(-3, 3), st.integers(1, 3))
@settings(max_examples=25)
def test_pipeline_matches_reference(a, c):
    assume(not in_T1(a, c) and not in_T2(a, c))
    br = branch_curve(cover_model(conic_point((a, c))))
    assert br.multiplicity == 1
    assert normalize_scalar(br.homogenized.form) == normalize_scalar(reference_sextic(a, c).form)


@given(st.sampled_from([-2, -1, 0, 1, 2, 3, W, W2, W * 2]), st.sampled_from([1, 2, 3]))
@settings(max_examples=25)
def test_singular_exactly_on_t1(a, c):
    dim = local_model_singular_locus(cover_model(conic_point((a, c))))
    assert (dim == -1) == (not in_T1(a, c))


@given(st.integers(-4, 4), st.integers(1, 4))
def test_dual_pencil_with_rescaled_m1(a, c):
    a, c = CycNum(a), CycNum(c)
    m0, m1 = a * a * c, (a ** 3 / 2 - c ** 3 * 2) / 3
    assume(m0 or m1)
    assert scalar_ratio(reference_sextic(a, c).form, hesse_dual(m0, m1).form) is not None


def test_dual_pencil_as_stated_is_off_by_three():
    a, c = CycNum(1), CycNum(2)
    m0, m1 = a * a * c, a ** 3 / 2 - c ** 3 * 2
    assert scalar_ratio(reference_sextic(a, c).form, hesse_dual(m0, m1).form) is None
    assert scalar_ratio(reference_sextic(a, c).form, hesse_dual(m0, m1 / 3).form) is not None
