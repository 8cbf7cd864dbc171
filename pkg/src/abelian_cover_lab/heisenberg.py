"""Finite Heisenberg group H_3, its induced 45-dimensional representation,
the Pluecker relations on building data, and (Z/3)^2 eigenspaces.

Basis conventions
-----------------
V has basis X, Y, Z and V* the dual basis Xh, Yh, Zh.  S^2 V* uses the
quadratic monomials XX, XY, XZ, YY, YZ, ZZ (in hatted variables), and the
wedge basis of Lambda^2 S^2 V* is the fixed list ``WEDGE_BASIS`` below.
A vector of the 45-dimensional space is indexed by ``3*w + x`` with ``w``
the wedge index and ``x`` the index of the final V factor.  The
Lambda^3 V factor is one-dimensional (X^Y^Z) and acts by the determinant.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

from .exact import ONE, ZERO, CycNum, FieldMatrix, field_kernel, in_span, omega_power, vstack
from .multipoly import MPoly, VarSet, normalize_scalar, parse_number, parse_poly

OMEGA = omega_power(1)

QUADRATICS = ["XX", "XY", "XZ", "YY", "YZ", "ZZ"]
WEDGE_BASIS = [
    ("XX", "XY"), ("XX", "XZ"), ("XX", "YY"), ("XX", "YZ"), ("XX", "ZZ"),
    ("XY", "XZ"), ("XY", "YY"), ("XY", "YZ"), ("XY", "ZZ"), ("XZ", "YY"),
    ("XZ", "YZ"), ("XZ", "ZZ"), ("YY", "YZ"), ("YY", "ZZ"), ("YZ", "ZZ"),
]
LINEAR = "XYZ"
DIM45 = 45


# ---------------------------------------------------------------------------
# Schroedinger representation
# ---------------------------------------------------------------------------

_SHIFT = FieldMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
_DIAG = FieldMatrix.diag([ONE, OMEGA, omega_power(2)])


def schrodinger_matrix(t: int, l: int) -> FieldMatrix:
    """Image of (1, t, l): diag(1, w, w^2)^t times the cyclic shift^l."""
    return (_DIAG ** (t % 3)) @ (_SHIFT ** (l % 3))


def cocycle_exponent(t: int, l: int, t2: int, l2: int) -> int:
    """k with M(t,l) M(t2,l2) = w^k M(t+t2, l+l2) for the tabulated matrices."""
    return (l * t2) % 3


@dataclass(frozen=True)
class HeisenbergElement:
    k: CycNum
    t: int
    l: int

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % 3)
        object.__setattr__(self, "l", self.l % 3)

    def __mul__(self, other: HeisenbergElement) -> HeisenbergElement:
        k = self.k * other.k * omega_power(cocycle_exponent(self.t, self.l, other.t, other.l))
        return HeisenbergElement(k, self.t + other.t, self.l + other.l)

    def matrix(self) -> FieldMatrix:
        return schrodinger_matrix(self.t, self.l).scale(self.k)


def cocycle_table():
    """All 81 triples ``(lhs, rhs)`` comparing both sides of the cocycle identity."""
    rows = []
    for t, l, t2, l2 in itertools.product(range(3), repeat=4):
        lhs = schrodinger_matrix(t, l) @ schrodinger_matrix(t2, l2)
        rhs = schrodinger_matrix(t + t2, l + l2).scale(omega_power(cocycle_exponent(t, l, t2, l2)))
        rows.append(((t, l, t2, l2), lhs, rhs))
    return rows


# ---------------------------------------------------------------------------
# induced 45-dimensional representation
# ---------------------------------------------------------------------------

def _sym2(m: FieldMatrix) -> FieldMatrix:
    """Action on quadratic monomials when basis vector j maps to sum_i m[i,j] e_i."""
    idx = {q: n for n, q in enumerate(QUADRATICS)}
    out = [[ZERO] * 6 for _ in range(6)]
    for col, q in enumerate(QUADRATICS):
        a, b = LINEAR.index(q[0]), LINEAR.index(q[1])
        for i in range(3):
            for j in range(3):
                c = m[i, a] * m[j, b]
                if not c:
                    continue
                key = "".join(sorted(LINEAR[i] + LINEAR[j], key=LINEAR.index))
                r = idx[key]
                out[r][col] = out[r][col] + c
    return FieldMatrix.from_rows(out)


def _wedge2(m6: FieldMatrix) -> FieldMatrix:
    idx = {q: n for n, q in enumerate(QUADRATICS)}
    pairs = [(idx[a], idx[b]) for a, b in WEDGE_BASIS]
    out = [[ZERO] * 15 for _ in range(15)]
    for col, (i, j) in enumerate(pairs):
        for row, (k, l) in enumerate(pairs):
            out[row][col] = m6[k, i] * m6[l, j] - m6[l, i] * m6[k, j]
    return FieldMatrix.from_rows(out)


def induced45_generator(m: FieldMatrix) -> FieldMatrix:
    """Matrix of ``m`` on Lambda^2 S^2 V* (x) Lambda^3 V (x) V.

    V* transforms by the inverse transpose, Lambda^3 V by det(m), V by m.
    """
    det = m.det()
    if not det:
        raise ValueError("induced action needs an invertible matrix")
    hat = m.inverse().T
    w = _wedge2(_sym2(hat)).scale(det)
    rows = []
    for r in range(DIM45):
        wr, xr = divmod(r, 3)
        row = []
        for c in range(DIM45):
            wc, xc = divmod(c, 3)
            a = w[wr, wc]
            row.append(a * m[xr, xc] if a else ZERO)
        rows.append(row)
    return FieldMatrix.from_rows(rows)


def generators45() -> tuple[FieldMatrix, FieldMatrix]:
    return induced45_generator(schrodinger_matrix(1, 0)), induced45_generator(schrodinger_matrix(0, 1))


@dataclass(frozen=True)
class InvariantBasis:
    vectors: tuple

    def __len__(self) -> int:
        return len(self.vectors)

    def contains(self, v: FieldMatrix) -> bool:
        return in_span(v, list(self.vectors))


def invariant_subspace45() -> InvariantBasis:
    """Kernel of (R45 - I) stacked over (S45 - I)."""
    R, S = generators45()
    eye = FieldMatrix.identity(DIM45)
    basis = field_kernel(vstack([R - eye, S - eye]))
    if len(basis) != 5:
        raise RuntimeError(f"invariant subspace has dimension {len(basis)}, expected 5")
    return InvariantBasis(tuple(basis))


def basis_index(h1: str, h2: str, x: str) -> tuple[int, int]:
    """(index, sign) of (h1 ^ h2) (x) (X^Y^Z) (x) x in the 45-dim basis."""
    if h1 == h2:
        raise ValueError("wedge of a vector with itself")
    sign = 1
    if (h1, h2) not in WEDGE_BASIS:
        h1, h2 = h2, h1
        sign = -1
    return 3 * WEDGE_BASIS.index((h1, h2)) + LINEAR.index(x), sign


def vector45(terms) -> FieldMatrix:
    """Build a 45-vector from ``(coeff, h1, h2, x)`` terms."""
    vals = [ZERO] * DIM45
    for coeff, h1, h2, x in terms:
        i, s = basis_index(h1, h2, x)
        vals[i] = vals[i] + CycNum.coerce(coeff) * s
    return FieldMatrix.column(vals)


def describe45(v: FieldMatrix) -> str:
    parts = []
    for k in range(DIM45):
        c = v[k, 0]
        if c:
            a, b = WEDGE_BASIS[k // 3]
            parts.append(f"({c})*({a}^{b})@{LINEAR[k % 3]}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

_FIXTURE_VARS = VarSet(["X", "Y", "Z"])


def parse_fixtures(text: str) -> dict[str, FieldMatrix]:
    """Read ``name h1^h2 = linear form in X,Y,Z`` lines into 45-vectors."""
    terms: dict[str, list] = {}
    version = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("version"):
            version = line.split()[1]
            continue
        try:
            head, rhs = line.split("=", 1)
            name, wedge = head.split()
            h1, h2 = wedge.split("^")
        except ValueError:
            raise ValueError(f"fixture line {lineno}: cannot parse {raw!r}") from None
        form = parse_poly(rhs, _FIXTURE_VARS)
        if not form.is_homogeneous() or form.total_degree() != 1:
            raise ValueError(f"fixture line {lineno}: right side must be a linear form")
        bucket = terms.setdefault(name, [])
        for x in LINEAR:
            c = form.coefficient(tuple(int(x == y) for y in LINEAR))
            if c:
                bucket.append((c, h1, h2, x))
    if version is None:
        raise ValueError("fixture file lacks a version line")
    return {name: vector45(t) for name, t in terms.items()}


def load_fixtures() -> dict[str, FieldMatrix]:
    text = resources.files("abelian_cover_lab.data").joinpath("heisenberg_fixtures.txt").read_text()
    return parse_fixtures(text)


def relabel_last_factor(v: FieldMatrix, perm: dict[str, str]) -> FieldMatrix:
    """Rename the final V factor, e.g. ``{"Y": "Z", "Z": "Y"}``."""
    vals = [ZERO] * DIM45
    for k in range(DIM45):
        c = v[k, 0]
        if c:
            w, x = divmod(k, 3)
            y = perm.get(LINEAR[x], LINEAR[x])
            vals[3 * w + LINEAR.index(y)] = c
    return FieldMatrix.column(vals)


# ---------------------------------------------------------------------------
# building data and Pluecker relations
# ---------------------------------------------------------------------------

PAIRS = [(i, j) for i in range(1, 7) for j in range(i + 1, 7)]

# c_ij = sign * coordinate * variable
CIJ_TABLE = {
    (1, 2): ("a", 1, "Z"), (1, 3): ("b", 1, "Y"), (1, 4): ("c", 1, "Y"),
    (1, 5): ("d", 1, "X"), (1, 6): ("c", -1, "Z"), (2, 3): ("e", 1, "X"),
    (2, 4): ("b", -1, "X"), (2, 5): ("e", -1, "Z"), (2, 6): ("d", -1, "Y"),
    (3, 4): ("d", -1, "Z"), (3, 5): ("e", 1, "Y"), (3, 6): ("a", -1, "X"),
    (4, 5): ("a", 1, "Y"), (4, 6): ("c", 1, "X"), (5, 6): ("b", -1, "Z"),
}

PLUCKER_QUADRUPLES = list(itertools.combinations(range(1, 7), 4))


def cij_forms(coords: dict, linear: dict) -> dict:
    """c_ij from coordinates a..e and linear forms for X, Y, Z (any ring)."""
    return {ij: linear[var] * coords[name] * sign for ij, (name, sign, var) in CIJ_TABLE.items()}


def plucker_residuals(cijs) -> list:
    """c_ij c_kl - c_ik c_jl + c_il c_jk for i<j<k<l, in lexicographic order."""
    if not isinstance(cijs, dict):
        cijs = dict(zip(PAIRS, cijs))
    c = lambda i, j: cijs[(i, j)]
    return [c(i, j) * c(k, l) - c(i, k) * c(j, l) + c(i, l) * c(j, k)
            for i, j, k, l in PLUCKER_QUADRUPLES]


def plucker_coefficient_conditions() -> list[MPoly]:
    """Coefficients in X,Y,Z of the fifteen residuals for symbolic a..e."""
    vs = VarSet(["a", "b", "c", "d", "e", "X", "Y", "Z"])
    g = {n: MPoly.var(vs, n) for n in vs}
    res = plucker_residuals(cij_forms(g, g))
    coeff_vs = VarSet(["a", "b", "c", "d", "e"])
    out = []
    seen = set()
    for r in res:
        groups: dict = {}
        for e, coef in r.terms.items():
            groups.setdefault(e[5:], {})[e[:5]] = coef
        for mono in sorted(groups):
            p = MPoly(coeff_vs, groups[mono])
            if p and normalize_scalar(p) not in seen:
                seen.add(normalize_scalar(p))
                out.append(p)
    return out


@dataclass(frozen=True)
class ConicPoint:
    a: CycNum
    b: CycNum
    c: CycNum
    d: CycNum
    e: CycNum

    def __post_init__(self):
        for n in "abcde":
            object.__setattr__(self, n, CycNum.coerce(getattr(self, n)))
        if self.b != -self.a or self.d or self.a * self.a + self.c * self.e:
            raise ValueError(f"({self}) is not on the conic a^2+ce=0, b+a=0, d=0")
        if not (self.a or self.c or self.e):
            raise ValueError("the zero vector is not a point of the conic")

    def coords(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "e": self.e}

    def __str__(self) -> str:
        return ", ".join(str(getattr(self, n)) for n in "abcde")


INFINITY = "infinity"


def _num(x) -> CycNum:
    return parse_number(x) if isinstance(x, str) else CycNum.coerce(x)


def conic_point(a_over_c) -> ConicPoint:
    """(a, -a, c, 0, -a^2/c) for a pair (a, c) with c != 0; (0,0,0,0,1) for ``"infinity"``."""
    if isinstance(a_over_c, str) and a_over_c == INFINITY:
        return ConicPoint(0, 0, 0, 0, 1)
    a, c = (_num(x) for x in a_over_c)
    if not c:
        raise ValueError("c = 0 is outside the affine chart; use 'infinity' for [1:0]")
    return ConicPoint(a, -a, c, 0, -(a * a) / c)


# ---------------------------------------------------------------------------
# (Z/3)^2 eigenspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharacterTable9:
    dims: dict  # (i, j) -> dimension

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def trivial(self) -> int:
        return self.dims[(0, 0)]

    def nontrivial(self) -> list[int]:
        return [self.dims[k] for k in sorted(self.dims) if k != (0, 0)]

    def __str__(self) -> str:
        return " ".join(f"chi{i}{j}={d}" for (i, j), d in sorted(self.dims.items()))


def character_decomposition(m1: FieldMatrix, m2: FieldMatrix) -> CharacterTable9:
    n = m1.rows
    if m1.cols != n or m2.rows != n or m2.cols != n:
        raise ValueError("need two square matrices of equal size")
    eye = FieldMatrix.identity(n)
    if m1 ** 3 != eye or m2 ** 3 != eye:
        raise ValueError("generators must have order dividing 3")
    if m1 @ m2 != m2 @ m1:
        raise ValueError("generators must commute")
    dims = {}
    for i in range(3):
        for j in range(3):
            stacked = vstack([m1 - eye.scale(omega_power(i)), m2 - eye.scale(omega_power(j))])
            dims[(i, j)] = n - stacked.rank()
    table = CharacterTable9(dims)
    assert table.total == n
    return table


BIDOUBLE_LABELS = [
    "Y/X", "Z/X", "h1(1)", "h2(1)", "delta1",
    "X/Y", "Z/Y", "h1(2)", "h2(2)", "delta2",
    "X/Z", "Y/Z", "h1(3)", "h2(3)", "delta3",
]

# weights of r on X, Y, Z as powers of omega
_R_WEIGHT = {"X": 0, "Y": 2, "Z": 1}
# s(X, Y, Z) = (Z, X, Y): the coordinate X of the image is Z, so D_X goes to D_Z
_S_VAR = {"X": "Z", "Y": "X", "Z": "Y"}
_BLOCK_OF = {"X": 1, "Y": 2, "Z": 3}


def bidouble_action15() -> tuple[FieldMatrix, FieldMatrix]:
    """Matrices of r and s on the 15-dimensional space of natural deformations.

    Ratios carry the weight induced from r on X, Y, Z; the h and delta
    vectors are fixed by r and permuted with their block by s.
    """
    idx = {lab: n for n, lab in enumerate(BIDOUBLE_LABELS)}
    r = [[ZERO] * 15 for _ in range(15)]
    s = [[ZERO] * 15 for _ in range(15)]
    for col, lab in enumerate(BIDOUBLE_LABELS):
        if "/" in lab:
            num, den = lab.split("/")
            r[col][col] = omega_power(_R_WEIGHT[num] - _R_WEIGHT[den])
            img = f"{_S_VAR[num]}/{_S_VAR[den]}"
            s[idx[img]][col] = ONE
        else:
            r[col][col] = ONE
            block = int(lab[-2] if lab.endswith(")") else lab[-1])
            var = "XYZ"[block - 1]
            nb = _BLOCK_OF[_S_VAR[var]]
            img = lab[:-2] + f"{nb})" if lab.endswith(")") else lab[:-1] + str(nb)
            s[idx[img]][col] = ONE
    return FieldMatrix.from_rows(r), FieldMatrix.from_rows(s)


def deformation_counts(chi0_dim: int, kernel_dim: int, epsilon_image_dim: int) -> tuple[int, int]:
    if not chi0_dim >= kernel_dim >= 0:
        raise ValueError("need chi0_dim >= kernel_dim >= 0")
    im = chi0_dim - kernel_dim
    return im, im + epsilon_image_dim
