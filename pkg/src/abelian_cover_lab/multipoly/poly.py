"""Sparse multivariate polynomials over Q(omega) and monomial orders."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from ..exact import ONE, ZERO, CycNum, Rational

RESERVED = "zeta"


class VarSet(tuple):
    """Ordered, duplicate-free tuple of variable names."""

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if RESERVED in names:
            raise ValueError(f"'{RESERVED}' is reserved for omega")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"bad variable name {n!r}")
        return super().__new__(cls, names)

    def index(self, name: str) -> int:  # type: ignore[override]
        try:
            return super().index(name)
        except ValueError:
            raise KeyError(name) from None

    def __repr__(self) -> str:
        return f"VarSet({list(self)})"


def _coerce(c) -> CycNum:
    if isinstance(c, CycNum):
        return c
    return CycNum(c)


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero CycNum."""

    __slots__ = ("varset", "terms", "_hash")

    def __init__(self, varset: VarSet | Sequence[str], terms: Mapping | None = None):
        if not isinstance(varset, VarSet):
            varset = VarSet(varset)
        self.varset = varset
        n = len(varset)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError("exponent length does not match varset")
            c = _coerce(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def _raw(cls, varset: VarSet, terms: dict) -> MPoly:
        p = object.__new__(cls)
        p.varset = varset
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, varset, c) -> MPoly:
        varset = varset if isinstance(varset, VarSet) else VarSet(varset)
        return cls(varset, {(0,) * len(varset): c})

    @classmethod
    def var(cls, varset, name: str) -> MPoly:
        varset = varset if isinstance(varset, VarSet) else VarSet(varset)
        e = [0] * len(varset)
        e[varset.index(name)] = 1
        return cls._raw(varset, {tuple(e): ONE})

    @classmethod
    def gens(cls, varset) -> tuple[MPoly, ...]:
        varset = varset if isinstance(varset, VarSet) else VarSet(varset)
        return tuple(cls.var(varset, n) for n in varset)

    @classmethod
    def zero(cls, varset) -> MPoly:
        varset = varset if isinstance(varset, VarSet) else VarSet(varset)
        return cls._raw(varset, {})

    # -- basic queries ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> CycNum:
        return self.terms.get((0,) * len(self.varset), ZERO)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.varset.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support_vars(self) -> set[str]:
        return {self.varset[i] for e in self.terms for i, k in enumerate(e) if k}

    def coefficient(self, exponent: Sequence[int]) -> CycNum:
        return self.terms.get(tuple(exponent), ZERO)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.varset == other.varset and self.terms == other.terms
        if isinstance(other, (int, Fraction, Rational, CycNum)):
            return self == MPoly.const(self.varset, other) if other else not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.varset, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.varset != self.varset:
                raise ValueError(f"varset mismatch: {self.varset} vs {other.varset}")
            return other
        return MPoly.const(self.varset, other)

    def __neg__(self) -> MPoly:
        return MPoly._raw(self.varset, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> MPoly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(self.varset, out)

    __radd__ = __add__

    def __sub__(self, other) -> MPoly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MPoly:
        return (-self) + other

    def __mul__(self, other) -> MPoly:
        if not isinstance(other, MPoly):
            try:
                c = _coerce(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MPoly.zero(self.varset)
            return MPoly._raw(self.varset, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                p = c1 * c2
                out[e] = p if s is None else s + p
        return MPoly._raw(self.varset, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> MPoly:
        c = _coerce(other)
        return self * c.inverse()

    def __pow__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.varset, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and substitution ----------------------------------------
    def diff(self, name: str) -> MPoly:
        i = self.varset.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MPoly._raw(self.varset, out)

    def evaluate(self, values: Mapping[str, object]) -> CycNum:
        vals = [_coerce(values[n]) for n in self.varset]
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def subs(self, mapping: Mapping[str, object], varset: VarSet | Sequence[str] | None = None) -> MPoly:
        """Substitute polynomials or constants for variables.

        Replacement polynomials live in ``varset`` (default: this varset); unreplaced
        variables must exist there.
        """
        target = self.varset if varset is None else (varset if isinstance(varset, VarSet) else VarSet(varset))
        images = []
        for n in self.varset:
            if n in mapping:
                r = mapping[n]
                images.append(r if isinstance(r, MPoly) else MPoly.const(target, r))
            else:
                images.append(MPoly.var(target, n))
        for im in images:
            if im.varset != target:
                raise ValueError("substitution images must share the target varset")
        powers: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        result = MPoly.zero(target)
        for e, c in self.terms.items():
            t = MPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            result = result + t
        return result

    def to_varset(self, varset: VarSet | Sequence[str]) -> MPoly:
        """Re-embed into another varset containing every variable actually used."""
        varset = varset if isinstance(varset, VarSet) else VarSet(varset)
        idx = []
        for n in self.varset:
            idx.append(varset.index(n) if n in varset else None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(varset)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.varset[i]} missing from target varset")
                    ne[idx[i]] = k
            out[tuple(ne)] = c
        return MPoly._raw(varset, out)

    def homogenize(self, name: str, degree: int | None = None) -> MPoly:
        """Homogenize with the (already present) variable ``name`` to ``degree``."""
        i = self.varset.index(name)
        d = self.total_degree() if degree is None else degree
        out = {}
        for e, c in self.terms.items():
            extra = d - sum(e)
            if extra < 0:
                raise ValueError("target degree below total degree")
            ne = list(e)
            ne[i] += extra
            out[tuple(ne)] = c
        return MPoly._raw(self.varset, out)

    def scale_to(self, exponent, value=1) -> MPoly:
        c = self.terms[tuple(exponent)]
        return self * (_coerce(value) / c)

    def __repr__(self) -> str:
        from .parse import format_poly
        return f"MPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        from .parse import format_poly
        return format_poly(self)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

def _grevlex_key(e):
    return (sum(e),) + tuple(-k for k in reversed(e))


def _lex_key(e):
    return tuple(e)


_INNER = {"grevlex": _grevlex_key, "lex": _lex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or a block order eliminating ``elim_vars`` first.

    In a block order every monomial involving an eliminated variable is
    larger than every monomial in the remaining variables; ``inner`` is the
    order used inside each block.
    """

    kind: str = "grevlex"
    elim_vars: tuple[str, ...] = ()
    inner: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {self.kind}")
        if self.inner not in _INNER:
            raise ValueError(f"unknown inner order {self.inner}")
        if self.kind == "block" and not self.elim_vars:
            raise ValueError("block order needs elimination variables")

    @classmethod
    def block(cls, elim_vars: Iterable[str], inner: str = "grevlex") -> MonomialOrder:
        return cls("block", tuple(elim_vars), inner)

    def key_function(self, varset: Sequence[str]):
        return _key_function(self, tuple(varset))

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({','.join(self.elim_vars)};{self.inner})"
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


@lru_cache(maxsize=None)
def _key_function(order: MonomialOrder, varset: tuple[str, ...]):
    if order.kind == "grevlex":
        return _grevlex_key
    if order.kind == "lex":
        return _lex_key
    inner = _INNER[order.inner]
    elim = tuple(i for i, n in enumerate(varset) if n in order.elim_vars)
    if len(elim) != len(order.elim_vars):
        missing = set(order.elim_vars) - set(varset)
        raise ValueError(f"elimination variables {sorted(missing)} not in varset")
    rest = tuple(i for i in range(len(varset)) if i not in elim)

    def key(e):
        return (inner(tuple(e[i] for i in elim)), inner(tuple(e[i] for i in rest)))

    return key


def leading_exponent(p: MPoly, order: MonomialOrder = GREVLEX):
    key = order.key_function(p.varset)
    return max(p.terms, key=key)


def leading_coefficient(p: MPoly, order: MonomialOrder = GREVLEX) -> CycNum:
    return p.terms[leading_exponent(p, order)]


def sorted_terms(p: MPoly, order: MonomialOrder = GREVLEX, descending: bool = True):
    key = order.key_function(p.varset)
    return sorted(p.terms.items(), key=lambda t: key(t[0]), reverse=descending)


def monic(p: MPoly, order: MonomialOrder = GREVLEX) -> MPoly:
    if not p:
        return p
    return p / leading_coefficient(p, order)


def normalize_scalar(p: MPoly) -> MPoly:
    """Scale so the grevlex-first coefficient is 1 (the "up to scalar" convention)."""
    return monic(p, GREVLEX)


def proportional(p: MPoly, q: MPoly) -> bool:
    if not p or not q:
        return not p and not q
    return normalize_scalar(p) == normalize_scalar(q)


def scalar_ratio(p: MPoly, q: MPoly) -> CycNum | None:
    """The scalar ``s`` with ``p == s*q`` or ``None``."""
    if not p or not q:
        return None
    e = leading_exponent(q)
    if e not in p.terms:
        return None
    s = p.terms[e] / q.terms[e]
    return s if p == q * s else None
