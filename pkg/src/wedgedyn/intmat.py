"""Exact integer and rational matrices, Smith normal form, and friends.

Everything here is pure Python over int/Fraction. Matrices are immutable
(tuples of tuples) so they can be dict keys and set members.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotDivisible, SingularMatrix


def _as_rows(rows):
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", _as_rows(self.rows))
        n = len(self.rows)
        for r in self.rows:
            if len(r) != n:
                raise DimensionMismatch("matrix must be square")
            for x in r:
                if not isinstance(x, int):
                    raise TypeError(f"integer entry expected, got {x!r}")

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(n: int) -> "IntMatrix":
        return IntMatrix(tuple((0,) * n for _ in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        return IntMatrix(tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        return IntMatrix(tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix(tuple(tuple(other * x for x in r) for r in self.rows))
        self._check(other)
        n = self.dim
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(self.rows[i][t] * cols[j][t] for t in range(n)) for j in range(n)) for i in range(n)))

    __rmul__ = __mul__

    def __neg__(self) -> "IntMatrix":
        return self * -1

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative powers are rational; use rat_inverse")
        out = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def apply(self, vec) -> tuple:
        """Matrix-vector product; accepts int or Fraction entries."""
        if len(vec) != self.dim:
            raise DimensionMismatch("vector length mismatch")
        return tuple(sum(r[j] * vec[j] for j in range(self.dim)) for r in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        n = self.dim
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for t in range(n - 1):
            if m[t][t] == 0:
                for i in range(t + 1, n):
                    if m[i][t] != 0:
                        m[t], m[i] = m[i], m[t]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
                m[i][t] = 0
            prev = m[t][t]
        return sign * m[n - 1][n - 1]

    def to_rat(self) -> "RatMatrix":
        return RatMatrix(tuple(tuple(Fraction(x) for x in r) for r in self.rows))

    def _check(self, other):
        if not isinstance(other, IntMatrix):
            raise TypeError(f"IntMatrix expected, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch("matrix dimensions differ")


@dataclass(frozen=True)
class RatMatrix:
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(Fraction(x) for x in r) for r in self.rows))
        n = len(self.rows)
        for r in self.rows:
            if len(r) != n:
                raise DimensionMismatch("matrix must be square")

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatMatrix(tuple(tuple(other * x for x in r) for r in self.rows))
        if isinstance(other, IntMatrix):
            other = other.to_rat()
        n = self.dim
        if other.dim != n:
            raise DimensionMismatch("matrix dimensions differ")
        cols = list(zip(*other.rows))
        return RatMatrix(tuple(tuple(sum(self.rows[i][t] * cols[j][t] for t in range(n)) for j in range(n)) for i in range(n)))

    def __pow__(self, k: int) -> "RatMatrix":
        if k < 0:
            return rat_inverse(self) ** (-k)
        out = RatMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def apply(self, vec) -> tuple:
        if len(vec) != self.dim:
            raise DimensionMismatch("vector length mismatch")
        return tuple(sum(r[j] * Fraction(vec[j]) for j in range(self.dim)) for r in self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(tuple(zip(*self.rows)))


def rat_inverse(m) -> RatMatrix:
    """Exact inverse of an IntMatrix or RatMatrix via Gauss-Jordan.

    Raises SingularMatrix when det = 0.
    """
    if isinstance(m, IntMatrix):
        m = m.to_rat()
    n = m.dim
    a = [list(r) for r in m.rows]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
    return RatMatrix(tuple(tuple(r) for r in inv))


@dataclass(frozen=True)
class SnfDecomposition:
    """U * source * V = D with U, V unimodular and D diagonal, d_i | d_{i+1} >= 0."""

    source: IntMatrix
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D.rows[i][i] for i in range(self.D.dim))

    @property
    def invariant_factors(self) -> tuple:
        """The diagonal entries > 1 (the cyclic factors of the cokernel)."""
        return tuple(d for d in self.diagonal if d > 1)


def snf(m: IntMatrix) -> SnfDecomposition:
    """Smith normal form with a deterministic pivot rule.

    Pivot selection always takes the smallest-absolute-value nonzero entry of
    the remaining submatrix, ties broken by lowest row index then lowest
    column index, so equal inputs give identical (U, D, V).
    """
    n = m.dim
    w = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):
        # row i -= q * row j, applied to W and U
        w[i] = [a - q * b for a, b in zip(w[i], w[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_sub(i, j, q):
        # col i -= q * col j, applied to W and V
        for r in w:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def row_swap(i, j):
        w[i], w[j] = w[j], w[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in w:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        w[i] = [-a for a in w[i]]
        u[i] = [-a for a in u[i]]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if w[i][j] != 0:
                        key = (abs(w[i][j]), i, j)
                        if best is None or key < best:
                            best = key
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            if w[t][t] < 0:
                row_neg(t)
            p = w[t][t]
            dirty = False
            for i in range(t + 1, n):
                if w[i][t] != 0:
                    q = w[i][t] // p
                    if q:
                        row_sub(i, t, q)
                    if w[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if w[t][j] != 0:
                    q = w[t][j] // p
                    if q:
                        col_sub(j, t, q)
                    if w[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot divides its cleared row/column; enforce it divides the rest
            viol = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if w[i][j] % p != 0:
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            row_sub(t, viol, -1)  # fold the offending row in, then re-reduce

    for t in range(n):
        if w[t][t] < 0:
            row_neg(t)

    U = IntMatrix(tuple(tuple(r) for r in u))
    V = IntMatrix(tuple(tuple(r) for r in v))
    D = IntMatrix(tuple(tuple(r) for r in w))
    if U * m * V != D:
        raise RuntimeError("SNF internal check failed: U*M*V != D")
    if abs(U.det()) != 1 or abs(V.det()) != 1:
        raise RuntimeError("SNF internal check failed: transforms not unimodular")
    diag = tuple(D.rows[i][i] for i in range(n))
    for i in range(n):
        for j in range(n):
            if i != j and D.rows[i][j] != 0:
                raise RuntimeError("SNF internal check failed: D not diagonal")
    for a, b in zip(diag, diag[1:]):
        if a < 0 or b < 0 or (a == 0 and b != 0) or (a != 0 and b % a != 0):
            raise RuntimeError("SNF internal check failed: divisor chain broken")
    return SnfDecomposition(source=m, U=U, D=D, V=V)


def c_matrix(a: IntMatrix, i: int, j: int) -> IntMatrix:
    """C with A^j - I = C * (A^i - I), namely sum of A^(t*i) for t = 0..j/i - 1.

    Raises NotDivisible unless i divides j.
    """
    if i <= 0 or j <= 0 or j % i != 0:
        raise NotDivisible(f"{i} does not divide {j}")
    n = a.dim
    acc = IntMatrix.zero(n)
    step = a ** i
    term = IntMatrix.identity(n)
    for _ in range(j // i):
        acc = acc + term
        term = term * step
    one = IntMatrix.identity(n)
    if acc * (a ** i - one) != a ** j - one:
        raise RuntimeError("c_matrix internal identity failed")
    return acc
