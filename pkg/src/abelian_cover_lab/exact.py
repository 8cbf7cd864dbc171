"""Exact arithmetic over Q and Q(omega), dense linear algebra, Smith normal form.

omega is a primitive cube root of unity, so every element of Q(omega) is
stored as ``re0 + re1*omega`` with rational parts and reduced with
``omega**2 = -1 - omega``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = type(mpq(0))


def as_rational(x) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, CycNum):
        if x.re1:
            raise ValueError(f"{x} is not rational")
        return x.re0
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Rational")


class CycNum:
    """Element ``re0 + re1*omega`` of the cyclotomic field Q(omega)."""

    __slots__ = ("re0", "re1")

    def __init__(self, re0=0, re1=0):
        self.re0 = as_rational(re0)
        self.re1 = as_rational(re1)

    @classmethod
    def coerce(cls, x) -> CycNum:
        if isinstance(x, CycNum):
            return x
        return cls(x, 0)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re0) or bool(self.re1)

    def is_rational(self) -> bool:
        return not self.re1

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.re0 == other.re0 and self.re1 == other.re1
        if isinstance(other, (int, Fraction, Rational)):
            return not self.re1 and self.re0 == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.re1:
            return hash(self.re0)
        return hash((self.re0, self.re1))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> CycNum:
        return CycNum(-self.re0, -self.re1)

    def __pos__(self) -> CycNum:
        return self

    def __add__(self, other) -> CycNum:
        if isinstance(other, CycNum):
            return CycNum(self.re0 + other.re0, self.re1 + other.re1)
        if isinstance(other, (int, Fraction, Rational)):
            return CycNum(self.re0 + other, self.re1)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> CycNum:
        if isinstance(other, CycNum):
            return CycNum(self.re0 - other.re0, self.re1 - other.re1)
        if isinstance(other, (int, Fraction, Rational)):
            return CycNum(self.re0 - other, self.re1)
        return NotImplemented

    def __rsub__(self, other) -> CycNum:
        return (-self) + other

    def __mul__(self, other) -> CycNum:
        if isinstance(other, CycNum):
            a, b, c, d = self.re0, self.re1, other.re0, other.re1
            bd = b * d
            return CycNum(a * c - bd, a * d + b * c - bd)
        if isinstance(other, (int, Fraction, Rational)):
            return CycNum(self.re0 * other, self.re1 * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Rational:
        a, b = self.re0, self.re1
        return a * a - a * b + b * b

    def conjugate(self) -> CycNum:
        # omega -> omega**2 = -1 - omega
        return CycNum(self.re0 - self.re1, -self.re1)

    def inverse(self) -> CycNum:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(omega)")
        c = self.conjugate()
        return CycNum(c.re0 / n, c.re1 / n)

    def __truediv__(self, other) -> CycNum:
        if isinstance(other, CycNum):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, Rational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return CycNum(self.re0 / other, self.re1 / other)
        return NotImplemented

    def __rtruediv__(self, other) -> CycNum:
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> CycNum:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- printing ---------------------------------------------------------
    def __repr__(self) -> str:
        return f"CycNum({self.re0}, {self.re1})"

    def __str__(self) -> str:
        return format_cyc(self)


def format_cyc(x: CycNum) -> str:
    """Text form in the polynomial grammar, e.g. ``2/3``, ``zeta``, ``1 - 2*zeta``."""
    a, b = x.re0, x.re1
    if not b:
        return str(a)
    if b == 1:
        om = "zeta"
    elif b == -1:
        om = "-zeta"
    else:
        om = f"{b}*zeta"
    if not a:
        return om
    if om.startswith("-"):
        return f"{a} - {om[1:]}"
    return f"{a} + {om}"


ZERO = CycNum(0, 0)
ONE = CycNum(1, 0)
OMEGA = CycNum(0, 1)
OMEGA2 = CycNum(-1, -1)


def omega_power(k: int) -> CycNum:
    return (ONE, OMEGA, OMEGA2)[k % 3]


def cyc_mul_inv(x: CycNum, y: CycNum) -> tuple[CycNum, CycNum | None]:
    """Product ``x*y`` and the inverse of ``x`` (``None`` when ``x`` is zero)."""
    inv = x.inverse() if x else None
    return x * y, inv


# ---------------------------------------------------------------------------
# dense matrices over Q(omega)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major CycNum

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> FieldMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(CycNum.coerce(x) for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> FieldMatrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> FieldMatrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> FieldMatrix:
        n = len(values)
        vals = [CycNum.coerce(v) for v in values]
        return cls(n, n, tuple(vals[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> FieldMatrix:
        return cls(len(values), 1, tuple(CycNum.coerce(v) for v in values))

    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[CycNum]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list[CycNum]]:
        return [self.row(i) for i in range(self.rows)]

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        self._same_shape(other)
        return FieldMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        self._same_shape(other)
        return FieldMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> FieldMatrix:
        c = CycNum.coerce(c)
        return FieldMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        n, m, p = self.rows, self.cols, other.cols
        A, B = self.entries, other.entries
        out = []
        for i in range(n):
            arow = A[i * m:(i + 1) * m]
            nz = [(k, a) for k, a in enumerate(arow) if a]
            for j in range(p):
                s = ZERO
                for k, a in nz:
                    b = B[k * p + j]
                    if b:
                        s = s + a * b
                out.append(s)
        return FieldMatrix(n, p, tuple(out))

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> FieldMatrix:
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(self.entries)

    def _same_shape(self, other: FieldMatrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # -- elimination ------------------------------------------------------
    def rref(self) -> tuple[list[list[CycNum]], list[int]]:
        """Reduced row echelon form and pivot columns."""
        M = self.tolist()
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if M[i][c]), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            inv = M[r][c].inverse()
            M[r] = [x * inv for x in M[r]]
            for i in range(self.rows):
                if i != r and M[i][c]:
                    f = M[i][c]
                    M[i] = [x - f * y for x, y in zip(M[i], M[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return M, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> CycNum:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        M = self.tolist()
        n = self.rows
        d = ONE
        for c in range(n):
            piv = next((i for i in range(c, n) if M[i][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                d = -d
            d = d * M[c][c]
            inv = M[c][c].inverse()
            for i in range(c + 1, n):
                if M[i][c]:
                    f = M[i][c] * inv
                    M[i] = [x - f * y for x, y in zip(M[i], M[c])]
        return d

    def inverse(self) -> FieldMatrix:
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = FieldMatrix.from_rows([self.row(i) + [ONE if i == j else ZERO for j in range(n)]
                                     for i in range(n)])
        R, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return FieldMatrix.from_rows([row[n:] for row in R])

    def __pow__(self, k: int) -> FieldMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out


def vstack(mats: Iterable[FieldMatrix]) -> FieldMatrix:
    mats = list(mats)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column counts differ")
    return FieldMatrix(sum(m.rows for m in mats), cols, tuple(e for m in mats for e in m.entries))


def kron(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    rows = []
    for i in range(a.rows):
        for k in range(b.rows):
            rows.append([a[i, j] * b[k, l] for j in range(a.cols) for l in range(b.cols)])
    return FieldMatrix.from_rows(rows)


def field_kernel(m: FieldMatrix) -> list[FieldMatrix]:
    """Basis of the right null space, one column per free variable.

    Each vector has a 1 in its free column (its first nonzero entry after
    back-substitution ordering) and vectors are ordered by that column.
    """
    R, pivots = m.rref()
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][free]
        first = next(x for x in v if x)
        if first != ONE:
            inv = first.inverse()
            v = [x * inv for x in v]
        basis.append(FieldMatrix.column(v))
    return basis


def span_rank(vectors: Sequence[FieldMatrix]) -> int:
    if not vectors:
        return 0
    return FieldMatrix.from_rows([list(v.entries) for v in vectors]).rank()


def in_span(v: FieldMatrix, basis: Sequence[FieldMatrix]) -> bool:
    return span_rank(list(basis) + [v]) == span_rank(basis)


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithDecomposition:
    U: tuple
    D: tuple
    V: tuple
    divisors: tuple


def _identity_int(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Return U, D, V with ``U @ M @ V == D`` diagonal and divisors in a divisibility chain."""
    A = [[int(x) for x in row] for row in m]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = _identity_int(nr)
    V = _identity_int(nc)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    k = min(nr, nc)
    divisors = tuple(sorted((A[i][i] for i in range(k)), key=lambda d: (d == 0, d)))
    if tuple(A[i][i] for i in range(k)) != divisors:
        # zeros come last; pivots chosen by minimal absolute value are already ordered otherwise
        raise AssertionError("Smith diagonal not in divisibility order")
    return SmithDecomposition(tuple(map(tuple, U)), tuple(map(tuple, A)), tuple(map(tuple, V)), divisors)


def int_matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def int_det(m) -> int:
    """Integer determinant via fraction-free Bareiss elimination."""
    A = [list(map(int, r)) for r in m]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1
