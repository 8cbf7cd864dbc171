"""Ideal-level operations built on the Groebner engine."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groebner import DEFAULT_STEP_BUDGET, groebner, reduce_poly
from .poly import GREVLEX, MonomialOrder, MPoly, VarSet, leading_exponent, monic, normalize_scalar


@dataclass(eq=False)
class IdealHandle:
    """An ideal with its generators, a monomial order and a cached basis."""

    generators: tuple
    order: MonomialOrder = GREVLEX
    cached_gb: list | None = field(default=None, repr=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator (use the zero polynomial)")
        vs = gens[0].varset
        if any(g.varset != vs for g in gens):
            raise ValueError("generators live in different varsets")
        self.generators = gens

    @property
    def varset(self) -> VarSet:
        return self.generators[0].varset

    def groebner(self, budget: int = DEFAULT_STEP_BUDGET) -> list[MPoly]:
        if self.cached_gb is None:
            self.cached_gb = groebner(self.generators, self.order, budget)
        return self.cached_gb

    def is_zero(self, budget: int = DEFAULT_STEP_BUDGET) -> bool:
        return not self.groebner(budget)

    def is_unit(self, budget: int = DEFAULT_STEP_BUDGET) -> bool:
        gb = self.groebner(budget)
        return len(gb) == 1 and gb[0].is_constant()

    def normal_form(self, p: MPoly, budget: int = DEFAULT_STEP_BUDGET) -> MPoly:
        return reduce_poly(p, self.groebner(budget), self.order, budget)

    def contains(self, p: MPoly, budget: int = DEFAULT_STEP_BUDGET) -> bool:
        return not self.normal_form(p, budget)

    def with_order(self, order: MonomialOrder) -> IdealHandle:
        return IdealHandle(self.generators, order)

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def ideal(gens: Iterable[MPoly], order: MonomialOrder = GREVLEX) -> IdealHandle:
    return IdealHandle(tuple(gens), order)


def groebner_basis(I: IdealHandle, budget: int = DEFAULT_STEP_BUDGET) -> list[MPoly]:
    return I.groebner(budget)


def eliminate(I: IdealHandle, drop_vars: Iterable[str], inner: str = "grevlex",
              budget: int = DEFAULT_STEP_BUDGET) -> IdealHandle:
    """Generators of the intersection of ``I`` with the ring in the remaining variables.

    Uses the block order (``drop_vars`` above the rest, ``inner`` in each
    block).  Inhomogeneous generators are first homogenised with a fresh
    variable placed in the lower block: a basis of the homogenised ideal is
    then computed degree by degree (sugar selection) and dehomogenised.  If
    ``g`` lies in the elimination ideal then ``h^k g^h`` lies in the
    homogenised one, so nothing is lost, and the affine computation's
    high-degree intermediate blow-up is avoided.

    The result lives in the smaller varset, carries the inner order, and its
    cached basis is the reduced basis of the elimination ideal.
    """
    drop = tuple(drop_vars)
    vs = I.varset
    unknown = [d for d in drop if d not in vs]
    if unknown:
        raise ValueError(f"cannot eliminate unknown variables {unknown}")
    rest = VarSet(n for n in vs if n not in drop)
    inner_order = MonomialOrder(inner)
    gens = [g for g in I.generators if g]
    if not gens:
        return IdealHandle((MPoly.zero(rest),), inner_order, [])
    homogeneous = all(g.is_homogeneous() for g in gens)
    if homogeneous:
        work, hname = gens, None
    else:
        hname = _fresh(vs, "h")
        big = VarSet(tuple(vs) + (hname,))
        work = [g.to_varset(big).homogenize(hname) for g in gens]
    wvs = work[0].varset
    gb = groebner(work, MonomialOrder.block(drop, inner), budget, strategy="sugar")
    dropped = [wvs.index(d) for d in drop]
    kept = [g for g in gb if all(all(e[i] == 0 for i in dropped) for e in g.terms)]
    if hname is None:
        out = [g.to_varset(rest) for g in kept]
        if not out:
            return IdealHandle((MPoly.zero(rest),), inner_order, [])
        # a reduced basis stays reduced after restriction to the lower block
        return IdealHandle(tuple(out), inner_order, list(out))
    out = [g.subs({hname: 1}).to_varset(rest) for g in kept]
    out = [g for g in out if g]
    if not out:
        return IdealHandle((MPoly.zero(rest),), inner_order, [])
    J = IdealHandle(tuple(out), inner_order)
    J.groebner(budget)
    return J


def _det(m: list[list[MPoly]]) -> MPoly:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return MPoly.zero(m[0][0].varset)
    return total


def minors(m: Sequence[Sequence[MPoly]], k: int) -> list[MPoly]:
    """All ``k x k`` minors in lexicographic (rows, cols) order, zeros kept."""
    rows, cols = len(m), len(m[0])
    if not 1 <= k <= min(rows, cols):
        raise ValueError(f"minor size {k} out of range for a {rows}x{cols} matrix")
    out = []
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            out.append(_det([[m[r][c] for c in cs] for r in rs]))
    return out


def minors_ideal(m: Sequence[Sequence[MPoly]], k: int, order: MonomialOrder = GREVLEX) -> IdealHandle:
    """Ideal of the ``k x k`` minors with zeros and scalar duplicates removed."""
    seen = set()
    gens = []
    for d in minors(m, k):
        if not d:
            continue
        key = normalize_scalar(d)
        if key in seen:
            continue
        seen.add(key)
        gens.append(d)
    if not gens:
        return IdealHandle((MPoly.zero(m[0][0].varset),), order, [])
    return IdealHandle(tuple(gens), order)


def _fresh(varset: VarSet, stem: str = "t") -> str:
    name = "_" + stem
    while name in varset:
        name += "_"
    return name


def exact_divide(f: MPoly, g: MPoly) -> MPoly:
    """``f / g`` for polynomials, raising ``ArithmeticError`` if ``g`` does not divide ``f``."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    vs = f.varset
    glm = leading_exponent(g)
    glc = g.terms[glm]
    q = {}
    r = f
    while r:
        lm = leading_exponent(r)
        shift = tuple(a - b for a, b in zip(lm, glm))
        if min(shift) < 0:
            raise ArithmeticError("polynomial does not divide")
        c = r.terms[lm] / glc
        q[shift] = c
        r = r - g * MPoly._raw(vs, {shift: c})
    return MPoly._raw(vs, q)


def poly_lcm(f: MPoly, g: MPoly, budget: int = DEFAULT_STEP_BUDGET) -> MPoly:
    """Generator of the principal ideal <f> intersected with <g>."""
    vs = f.varset
    t = _fresh(vs)
    big = VarSet(tuple(vs) + (t,))
    T = MPoly.var(big, t)
    fb, gb = f.to_varset(big), g.to_varset(big)
    J = eliminate(IdealHandle((T * fb, (1 - T) * gb)), [t], budget=budget)
    gens = J.groebner(budget)
    if len(gens) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return gens[0].to_varset(vs)


def poly_gcd(f: MPoly, g: MPoly, budget: int = DEFAULT_STEP_BUDGET) -> MPoly:
    """Monic (grevlex) greatest common divisor."""
    if not f:
        return monic(g) if g else g
    if not g:
        return monic(f)
    if f.is_constant() or g.is_constant():
        return MPoly.const(f.varset, 1)
    if f.total_degree() == 1 or g.total_degree() == 1:
        lin, other = (f, g) if f.total_degree() == 1 else (g, f)
        try:
            exact_divide(other, lin)
            return monic(lin)
        except ArithmeticError:
            return MPoly.const(f.varset, 1)
    lcm = poly_lcm(f, g, budget)
    return monic(exact_divide(f * g, lcm))


def _gcd_with_partials(p: MPoly, budget: int) -> MPoly:
    g = p
    for name in p.varset:
        d = p.diff(name)
        if d:
            g = poly_gcd(g, d, budget)
            if g.is_constant():
                break
    return g


def squarefree_part(p: MPoly, budget: int = DEFAULT_STEP_BUDGET):
    """Return ``(reduced, profile)``.

    ``reduced`` is ``p / gcd(p, all partials)`` normalised to grevlex-first
    coefficient 1.  ``profile`` lists ``(degree, multiplicity)`` for the
    factor collecting the points of each multiplicity, obtained from the
    chain ``p, gcd(p, dp), gcd(gcd(p,dp), d gcd(p,dp)), ...``.  Over a field
    of characteristic zero this is exact even in several variables.
    """
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_constant():
        return MPoly.const(p.varset, 1), []
    chain = [normalize_scalar(p)]
    while not chain[-1].is_constant():
        chain.append(_gcd_with_partials(chain[-1], budget))
    # chain[i] = prod_k P_k^{max(k - i, 0)}; ratios give prod_{k > i} P_k
    ratios = [exact_divide(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    profile = []
    for i in range(len(ratios)):
        nxt = ratios[i + 1] if i + 1 < len(ratios) else MPoly.const(p.varset, 1)
        factor = exact_divide(ratios[i], nxt)
        if not factor.is_constant():
            profile.append((factor.total_degree(), i + 1))
    reduced = normalize_scalar(ratios[0])
    return reduced, profile


def ideal_dimension(I: IdealHandle, budget: int = DEFAULT_STEP_BUDGET) -> int:
    """Krull dimension of ``V(I)`` in affine space; ``-1`` for the unit ideal."""
    gb = I.groebner(budget)
    n = len(I.varset)
    if not gb:
        return n
    if any(g.is_constant() for g in gb):
        return -1
    key = I.order.key_function(I.varset)
    supports = []
    for g in gb:
        lm = max(g.terms, key=key)
        supports.append(frozenset(i for i, k in enumerate(lm) if k))
    # largest set of variables containing no leading-monomial support
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def quotient_dimension(I: IdealHandle, budget: int = DEFAULT_STEP_BUDGET) -> int:
    """Vector-space dimension of ``k[x]/I`` for a zero-dimensional ideal.

    Counts standard monomials; ``0`` for the unit ideal.
    """
    gb = I.groebner(budget)
    n = len(I.varset)
    if any(g.is_constant() for g in gb):
        return 0
    key = I.order.key_function(I.varset)
    lms = [max(g.terms, key=key) for g in gb]
    for i in range(n):
        if not any(lm[i] and sum(lm) == lm[i] for lm in lms):
            raise ValueError("ideal is not zero-dimensional")

    def standard(e):
        return not any(all(a <= b for a, b in zip(lm, e)) for lm in lms)

    seen = set()
    stack = [(0,) * n]
    while stack:
        e = stack.pop()
        if e in seen or not standard(e):
            continue
        seen.add(e)
        for i in range(n):
            stack.append(e[:i] + (e[i] + 1,) + e[i + 1:])
    return len(seen)


def radical_membership(p: MPoly, I: IdealHandle, budget: int = DEFAULT_STEP_BUDGET) -> bool:
    """Whether ``p`` vanishes on ``V(I)``: adjoin ``1 - t*p`` and test for the unit ideal."""
    if not p:
        return True
    vs = I.varset
    t = _fresh(vs)
    big = VarSet(tuple(vs) + (t,))
    T = MPoly.var(big, t)
    gens = [g.to_varset(big) for g in I.generators if g]
    gens.append(1 - T * p.to_varset(big))
    J = IdealHandle(tuple(gens))
    return J.is_unit(budget)


def homogeneous_dimension_projective(I: IdealHandle, budget: int = DEFAULT_STEP_BUDGET) -> int:
    """Projective dimension of a homogeneous ideal (affine cone dimension minus one)."""
    d = ideal_dimension(I, budget)
    return d - 1 if d >= 0 else -1

