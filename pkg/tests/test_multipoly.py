import pytest
from hypothesis import given
from hypothesis import strategies as st

from abelian_cover_lab.exact import OMEGA, CycNum
from abelian_cover_lab.multipoly import (GREVLEX, LEX, IdealHandle, MonomialOrder, MPoly, PolySyntaxError,
                                         ResourceLimitExceeded, UnknownIdentifier, VarSet, buchberger_criterion,
                                         eliminate, exact_divide, format_poly, groebner, ideal, ideal_dimension,
                                         leading_exponent, minors, minors_ideal, parse_poly, poly_gcd,
                                         quotient_dimension, radical_membership, reduce_poly, squarefree_part)
from strategies import polys

XYZ = VarSet(["x", "y", "z"])


def P(text, vs=XYZ):
    return parse_poly(text, vs)


# -- parsing and printing ----------------------------------------------------

def test_parse_bidouble_equation():
    vs = VarSet(["Y", "Z", "u", "v", "w"])
    p = parse_poly("u^2 - Y*Z", vs)
    assert p.coefficient((0, 0, 2, 0, 0)) == 1
    assert p.coefficient((1, 1, 0, 0, 0)) == -1
    assert len(p.terms) == 2


def test_parse_rational_and_zeta():
    p = parse_poly("(2/3)*X + zeta*Y", ["X", "Y", "Z"])
    assert p.coefficient((1, 0, 0)) == CycNum("2/3")
    assert p.coefficient((0, 1, 0)) == OMEGA


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as err:
        parse_poly("X + Q", ["X", "Y", "Z"])
    assert err.value.position == 4


def test_syntax_error_position():
    with pytest.raises(PolySyntaxError) as err:
        parse_poly("x + * y", XYZ)
    assert err.value.position == 4
    with pytest.raises(PolySyntaxError):
        parse_poly("", XYZ)
    with pytest.raises(PolySyntaxError):
        parse_poly("x / y", XYZ)


def test_zeta_is_reserved():
    with pytest.raises(ValueError):
        VarSet(["x", "zeta"])


@given(polys(omega=True, max_deg=3, max_terms=5))
def test_print_parse_round_trip(p):
    assert parse_poly(format_poly(p), p.varset) == p


# -- Groebner bases ----------------------------------------------------------

def test_gb_of_variables():
    assert sorted(map(str, groebner([P("x"), P("y")]))) == ["x", "y"]


def test_lex_elimination_example():
    gb = groebner([P("x^2 - y"), P("x^3 - z")], LEX)
    assert P("y^3 - z^2") in gb


def test_unit_ideal():
    assert groebner([P("1")]) == [P("1")]
    assert groebner([P("x"), P("x + 1")]) == [P("1")]


def test_reduced_basis_is_monic_and_sorted():
    gb = ideal([P("2*x*y - z"), P("3*y^2 + x")]).groebner()
    key = GREVLEX.key_function(XYZ)
    lms = [leading_exponent(g) for g in gb]
    assert all(g.terms[leading_exponent(g)] == 1 for g in gb)
    assert lms == sorted(lms, key=key)


def test_step_budget():
    gens = [P("x^2*y - z + 1"), P("x*y^2 - x + 2"), P("y*z^2 - x*y + 3")]
    with pytest.raises(ResourceLimitExceeded):
        groebner(gens, budget=10)


def test_normal_form_and_membership():
    I = ideal([P("x^2 - y"), P("y^2 - z")])
    assert I.contains(P("x^4 - z"))
    assert not I.contains(P("x - z"))
    assert reduce_poly(P("x^2"), [P("x^2 - y")]) == P("y")


@given(st.lists(polys(), min_size=1, max_size=3))
def test_confluence(gens):
    gb = groebner(gens)
    assert buchberger_criterion(gb)
    for g in gens:
        assert not reduce_poly(g, gb)


@given(st.lists(polys(omega=True), min_size=1, max_size=2))
def test_confluence_over_omega(gens):
    assert buchberger_criterion(groebner(gens))


# -- elimination -------------------------------------------------------------

def test_eliminate_substitution():
    vs = VarSet(["u", "v", "Y"])
    J = eliminate(IdealHandle((parse_poly("u - Y^2", vs), parse_poly("v - u^2", vs))), ["u"])
    assert J.varset == VarSet(["v", "Y"])
    assert J.groebner() == [parse_poly("Y^4 - v", J.varset)]


def test_eliminate_to_zero_ideal():
    vs = VarSet(["u", "Y"])
    J = eliminate(IdealHandle((parse_poly("u^2 - Y", vs),)), ["u"])
    assert J.is_zero()


def test_eliminate_unknown_variable():
    with pytest.raises(ValueError):
        eliminate(ideal([P("x")]), ["q"])


def test_block_order_ranks_elim_vars_first():
    key = MonomialOrder.block(["x"]).key_function(XYZ)
    assert key((1, 0, 0)) > key((0, 5, 5))


@given(st.lists(polys(names=("t", "x", "y")), min_size=1, max_size=3))
def test_elimination_order_independence(gens):
    I = IdealHandle(tuple(gens))
    a = eliminate(I, ["t"], inner="grevlex").groebner()
    b = eliminate(I, ["t"], inner="lex").groebner()
    assert a == (groebner(b) if b else [])


# -- minors, gcd, squarefree ---------------------------------------------------

def test_minors_identity():
    one, zero = MPoly.const(XYZ, 1), MPoly.zero(XYZ)
    assert minors_ideal([[one, zero], [zero, one]], 2).is_unit()


def test_minors_zero_row():
    x, zero = P("x"), MPoly.zero(XYZ)
    assert minors_ideal([[x, P("y")], [zero, zero]], 2).is_zero()
    with pytest.raises(ValueError):
        minors([[x]], 2)


def test_minor_count():
    m = [[P("x"), P("y"), P("z")] for _ in range(6)]
    assert len(minors(m, 3)) == 20


def test_exact_divide():
    assert exact_divide(P("x^2 - y^2"), P("x - y")) == P("x + y")
    with pytest.raises(ArithmeticError):
        exact_divide(P("x^2 + 1"), P("x - y"))


def test_gcd():
    g = poly_gcd(P("(x + y)^2*(x - z)"), P("(x + y)*(y - z)"))
    assert g == P("x + y")


def test_squarefree_square():
    vs = VarSet(["Y", "Z"])
    red, profile = squarefree_part(parse_poly("Y^2*Z^2", vs))
    assert red == parse_poly("Y*Z", vs)
    assert profile == [(2, 2)]


def test_squarefree_quartic():
    p = P("x^4 + y^4 - 3*x*y*z^2 + z - 1")
    red, profile = squarefree_part(p)
    assert red == p
    assert profile == [(4, 1)]


def test_squarefree_mixed_profile():
    red, profile = squarefree_part(P("x*(y - 1)^3"))
    assert red == P("x*y - x")
    assert sorted(profile) == [(1, 1), (1, 3)]


@given(polys(names=("x", "y"), max_terms=3), st.integers(1, 3))
def test_squarefree_idempotent(p, n):
    if p.is_constant():
        return
    red, _ = squarefree_part(p)
    assert squarefree_part(p ** n)[0] == red
    assert squarefree_part(red)[0] == red


# -- dimension and radicals ----------------------------------------------------

def test_dimension_examples():
    assert ideal_dimension(ideal([P("1")])) == -1
    vs = VarSet(["x", "y"])
    assert ideal_dimension(ideal([parse_poly("x - 1", vs), parse_poly("y - 2", vs)])) == 0
    assert ideal_dimension(ideal([P("x*y")])) == 2
    assert ideal_dimension(ideal([MPoly.zero(XYZ)])) == 3


def test_quotient_dimension():
    assert quotient_dimension(ideal([P("x^2"), P("y"), P("z^3")])) == 6
    with pytest.raises(ValueError):
        quotient_dimension(ideal([P("x")]))


def test_radical_membership():
    vs = VarSet(["x", "y"])
    I = ideal([parse_poly("x^2", vs)])
    assert radical_membership(parse_poly("x", vs), I)
    assert not radical_membership(parse_poly("y", vs), I)
