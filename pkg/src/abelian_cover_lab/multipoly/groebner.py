"""Buchberger's algorithm with Gebauer-Moeller pair criteria.

Polynomials are handled internally as plain ``{exponent: coefficient}``
dicts.  When every input coefficient is rational the computation runs on
bare ``mpq`` values, otherwise on ``CycNum``; both support the same
operators so the engine code is shared.
"""
from __future__ import annotations

import heapq
from typing import Sequence

from ..exact import CycNum
from .poly import GREVLEX, MonomialOrder, MPoly, VarSet

DEFAULT_STEP_BUDGET = 10_000_000


class ResourceLimitExceeded(RuntimeError):
    """Raised when a computation exceeds its reduction-step budget."""

    def __init__(self, steps: int, budget: int):
        super().__init__(f"step budget exhausted ({steps} > {budget} reduction steps)")
        self.steps = steps
        self.budget = budget


def _to_domain(polys: Sequence[MPoly]):
    rational = all(p.is_rational() for p in polys)
    if rational:
        return [{e: c.re0 for e, c in p.terms.items()} for p in polys], True
    return [dict(p.terms) for p in polys], False


def _from_domain(varset: VarSet, d: dict, rational: bool) -> MPoly:
    if rational:
        return MPoly._raw(varset, {e: CycNum(c, 0) for e, c in d.items()})
    return MPoly._raw(varset, dict(d))


def _mask(e) -> int:
    m = 0
    for i, k in enumerate(e):
        if k:
            m |= 1 << i
    return m


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Engine:
    def __init__(self, order: MonomialOrder, varset: VarSet, budget: int, strategy: str):
        self.key = order.key_function(varset)
        self.nvars = len(varset)
        self.budget = budget
        self.strategy = strategy
        self.steps = 0
        self._kc: dict = {}
        self._nk: dict = {}
        # basis storage: parallel lists indexed by basis id
        self.polys: list[dict] = []
        self.lms: list[tuple] = []
        self.masks: list[int] = []
        self.sugar: list[int] = []
        self.active: list[int] = []

    # -- order helpers ----------------------------------------------------
    def k(self, e):
        v = self._kc.get(e)
        if v is None:
            v = self._kc[e] = self.key(e)
        return v

    def negkey(self, e):
        v = self._nk.get(e)
        if v is None:
            v = self._nk[e] = _neg(self.k(e))
        return v

    def lm(self, p: dict):
        return max(p, key=self.k)

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.budget:
            raise ResourceLimitExceeded(self.steps, self.budget)

    # -- reduction --------------------------------------------------------
    def find_reducer(self, e, emask, among):
        for i in among:
            if self.masks[i] & ~emask:
                continue
            if _divides(self.lms[i], e):
                return i
        return None

    def normal_form(self, p: dict, among: Sequence[int], sugar: int = 0) -> dict:
        """Fully reduce ``p`` (consumed) modulo the basis elements ``among``.

        The sugar of the result (the degree ``p`` would have in the
        homogenised computation) is left in ``self.last_sugar``.
        """
        self.last_sugar = sugar
        if not p:
            return p
        heap = [(self.negkey(e), e) for e in p]
        heapq.heapify(heap)
        rem = {}
        polys, lms = self.polys, self.lms
        negkey = self.negkey
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            _, e = pop(heap)
            c = p.get(e)
            if c is None:
                continue
            i = self.find_reducer(e, _mask(e), among)
            if i is None:
                rem[e] = p.pop(e)
                continue
            del p[e]
            g = polys[i]
            glm = lms[i]
            shift = tuple(a - b for a, b in zip(e, glm))
            sg = sum(shift) + self.sugar[i]
            if sg > self.last_sugar:
                self.last_sugar = sg
            for ge, gc in g.items():
                if ge == glm:
                    continue
                ne = tuple(a + b for a, b in zip(ge, shift))
                v = p.get(ne)
                if v is None:
                    p[ne] = -(c * gc)
                    push(heap, (negkey(ne), ne))
                else:
                    v = v - c * gc
                    if v:
                        p[ne] = v
                    else:
                        del p[ne]
            self.tick()
        return rem

    def make_monic(self, p: dict) -> dict:
        lc = p[self.lm(p)]
        if lc == 1:
            return p
        inv = 1 / lc
        return {e: c * inv for e, c in p.items()}

    def add(self, p: dict, sugar: int) -> int:
        p = self.make_monic(p)
        lm = self.lm(p)
        self.polys.append(p)
        self.lms.append(lm)
        self.masks.append(_mask(lm))
        self.sugar.append(sugar)
        return len(self.polys) - 1

    def spoly(self, i: int, j: int) -> dict:
        lcm = _lcm(self.lms[i], self.lms[j])
        out: dict = {}
        for idx, sign in ((i, 1), (j, -1)):
            lm = self.lms[idx]
            shift = tuple(a - b for a, b in zip(lcm, lm))
            for e, c in self.polys[idx].items():
                ne = tuple(a + b for a, b in zip(e, shift))
                v = out.get(ne)
                v = (c if sign > 0 else -c) if v is None else (v + c if sign > 0 else v - c)
                if v:
                    out[ne] = v
                else:
                    out.pop(ne, None)
        return out

    def pair_sugar(self, i: int, j: int) -> int:
        lcm = _lcm(self.lms[i], self.lms[j])
        d = sum(lcm)
        return max(self.sugar[i] + d - sum(self.lms[i]), self.sugar[j] + d - sum(self.lms[j]))

    # -- Gebauer-Moeller update -------------------------------------------
    def update(self, G: list[int], B: list, h: int):
        lms = self.lms
        hlm = lms[h]
        C = [(h, g) for g in G]
        D = []
        while C:
            pair = C.pop(0)
            g1 = pair[1]
            lcm1 = _lcm(hlm, lms[g1])
            if _disjoint(hlm, lms[g1]):
                D.append(pair)
                continue
            redundant = False
            for other in C + D:
                if _divides(_lcm(hlm, lms[other[1]]), lcm1):
                    redundant = True
                    break
            if not redundant:
                D.append(pair)
        E = [(h, g) for h_, g in D if not _disjoint(hlm, lms[g])]
        Bn = []
        for (g1, g2, lcm12) in B:
            if (_divides(hlm, lcm12) and _lcm(lms[g1], hlm) != lcm12
                    and _lcm(lms[g2], hlm) != lcm12):
                continue
            Bn.append((g1, g2, lcm12))
        for (a, b) in E:
            Bn.append((a, b, _lcm(lms[a], lms[b])))
        Gn = [g for g in G if not _divides(hlm, lms[g])]
        Gn.append(h)
        return Gn, Bn

    def select(self, B):
        if self.strategy == "sugar":
            idx = min(range(len(B)), key=lambda t: (self.pair_sugar(B[t][0], B[t][1]), self.k(B[t][2]), B[t][0], B[t][1]))
        else:
            idx = min(range(len(B)), key=lambda t: (self.k(B[t][2]), B[t][0], B[t][1]))
        return B.pop(idx)

    def run(self, inputs: list[dict]):
        G: list[int] = []
        B: list = []
        seeds = [p for p in inputs if p]
        seeds.sort(key=lambda p: self.k(self.lm(p)))
        for p in seeds:
            deg = max(sum(e) for e in p)
            h = self.normal_form(dict(p), G, deg)
            if not h:
                continue
            hid = self.add(h, self.last_sugar)
            if not any(self.lms[hid]):
                return [hid]
            G, B = self.update(G, B, hid)
        while B:
            i, j, _ = self.select(B)
            s = self.spoly(i, j)
            sug = self.pair_sugar(i, j)
            self.tick()
            h = self.normal_form(s, G, sug)
            if not h:
                continue
            hid = self.add(h, self.last_sugar)
            if not any(self.lms[hid]):
                return [hid]
            G, B = self.update(G, B, hid)
        return G

    def reduce_basis(self, G: list[int]) -> list[dict]:
        G = sorted(G, key=lambda i: self.k(self.lms[i]))
        out = []
        for idx, i in enumerate(G):
            others = [j for j in G if j != i]
            p = dict(self.polys[i])
            lm = self.lms[i]
            lc = p.pop(lm)
            tail = self.normal_form(p, others)
            tail[lm] = lc
            out.append(self.make_monic(tail))
        return out


def _neg(key):
    if isinstance(key, tuple):
        return tuple(_neg(k) for k in key)
    return -key


def groebner(polys: Sequence[MPoly], order: MonomialOrder = GREVLEX,
             budget: int = DEFAULT_STEP_BUDGET, strategy: str = "normal") -> list[MPoly]:
    """Reduced Groebner basis, monic, sorted by ascending leading monomial."""
    polys = [p for p in polys]
    if not polys:
        raise ValueError("groebner basis of an empty generator list")
    varset = polys[0].varset
    if any(p.varset != varset for p in polys):
        raise ValueError("generators live in different varsets")
    data, rational = _to_domain(polys)
    if not any(data):
        return []
    eng = _Engine(order, varset, budget, strategy)
    G = eng.run(data)
    reduced = eng.reduce_basis(G)
    result = [_from_domain(varset, p, rational) for p in reduced]
    groebner.last_steps = eng.steps  # type: ignore[attr-defined]
    return result


def reduce_poly(p: MPoly, basis: Sequence[MPoly], order: MonomialOrder = GREVLEX,
                budget: int = DEFAULT_STEP_BUDGET) -> MPoly:
    """Full normal form of ``p`` modulo ``basis`` (need not be a Groebner basis)."""
    if not p:
        return p
    basis = [b for b in basis if b]
    data, rational = _to_domain([p] + basis)
    eng = _Engine(order, p.varset, budget, "normal")
    ids = [eng.add(b, 0) for b in data[1:]]
    r = eng.normal_form(dict(data[0]), ids)
    return _from_domain(p.varset, r, rational)


def s_polynomial(f: MPoly, g: MPoly, order: MonomialOrder = GREVLEX) -> MPoly:
    data, rational = _to_domain([f, g])
    eng = _Engine(order, f.varset, DEFAULT_STEP_BUDGET, "normal")
    i, j = eng.add(data[0], 0), eng.add(data[1], 0)
    return _from_domain(f.varset, eng.spoly(i, j), rational)


def buchberger_criterion(basis: Sequence[MPoly], order: MonomialOrder = GREVLEX) -> bool:
    """True iff every S-polynomial of ``basis`` reduces to zero."""
    basis = [b for b in basis if b]
    if not basis:
        return True
    data, rational = _to_domain(basis)
    eng = _Engine(order, basis[0].varset, DEFAULT_STEP_BUDGET, "normal")
    ids = [eng.add(b, 0) for b in data]
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            if _disjoint(eng.lms[ids[a]], eng.lms[ids[b]]):
                continue
            if eng.normal_form(eng.spoly(ids[a], ids[b]), ids):
                return False
    return True
