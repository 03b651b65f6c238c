"""Exact rational linear algebra.

Scalars are ``gmpy2.mpq`` values (always reduced, positive denominator).
Matrices are immutable and generic over their entries: the structural
routines only need field operations, so the same code runs over the
rationals and over ``QuadraticNumber`` entries.  Floating point only
enters through :func:`skew_spectrum`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral
from typing import Iterable, NamedTuple, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpq

from .errors import ShapeError, SingularError

Q = mpq
_MPQ = type(mpq(0))
_MPZ = type(gmpy2.mpz(0))


def rational(x) -> mpq:
    """Coerce ints, ``Fraction``, ``mpq`` and ``"p/q"`` strings to ``mpq``.

    Floats are refused: every structural value must be exact.
    """
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (bool, float, complex)):
        raise TypeError(f"refusing inexact scalar {x!r}")
    if isinstance(x, (Integral, _MPZ)):
        return mpq(int(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        try:
            return mpq(s)
        except ValueError:
            raise ValueError(f"cannot parse rational {x!r}") from None
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def rat_str(q) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_rational_square(q) -> bool:
    q = rational(q)
    return q >= 0 and gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator)


def rational_sqrt(q) -> mpq:
    if not is_rational_square(q):
        raise ValueError(f"{q} is not the square of a rational")
    q = rational(q)
    return mpq(gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator))


class QuadraticNumber:
    """``a + b*sqrt(r)`` with rational ``a, b`` and a fixed positive radicand ``r``.

    Two numbers combine only when their radicands agree (plain rationals
    combine with anything).
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b=0, r=1):
        self.a = rational(a)
        self.b = rational(b)
        self.r = rational(r)
        if self.r <= 0:
            raise ValueError("radicand must be positive")

    def _lift(self, other):
        if isinstance(other, QuadraticNumber):
            if other.r != self.r and other.b != 0 and self.b != 0:
                raise ValueError("mixing different square-root extensions")
            return other
        return QuadraticNumber(rational(other), 0, self.r)

    def _radicand(self, other):
        return self.r if self.b != 0 or other.b == 0 else other.r

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self._radicand(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.r)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        r = self._radicand(o)
        return QuadraticNumber(self.a * o.a + self.b * o.b * r, self.a * o.b + self.b * o.a, r)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.r)

    def norm(self) -> mpq:
        return self.a * self.a - self.b * self.b * self.r

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic extension")
        num = self * o.conjugate()
        return QuadraticNumber(num.a / n, num.b / n, num.r)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.r))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * float(gmpy2.sqrt(self.r))

    def __abs__(self):
        return self if float(self) >= 0 else -self

    def __repr__(self):
        if self.b == 0:
            return rat_str(self.a)
        return f"({rat_str(self.a)} + {rat_str(self.b)}*sqrt({rat_str(self.r)}))"


def _coerce(x):
    if isinstance(x, (QuadraticNumber, float, np.floating)):
        return x
    return rational(x)


class Matrix:
    """Immutable dense matrix stored as a tuple of row tuples."""

    __slots__ = ("_data", "rows", "cols")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_coerce(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged matrix rows")
            if cols is not None and cols != width:
                raise ShapeError("declared column count does not match data")
        else:
            width = cols or 0
        self._data = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._data = rows
        m.rows = len(rows)
        m.cols = cols
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = mpq(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(
            tuple(tuple(mpq(1) if i == j else mpq(0) for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        vals = [_coerce(v) for v in values]
        return cls._raw(
            tuple(tuple(vals[i] if i == j else mpq(0) for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [tuple(_coerce(x) for x in c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise ShapeError("columns of unequal length")
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(n)), len(columns))

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) if isinstance(x, QuadraticNumber) else str(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(r[j] for r in self._data) for j in range(self.cols)), self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)), self.cols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "Matrix":
        c = _coerce(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            return Matrix._raw(
                tuple(tuple(_dot(r, c) for c in ocols) for r in self._data), other.cols
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise ShapeError(f"cannot apply {self.shape} matrix to length-{len(v)} vector")
        return tuple(_dot(r, v) for r in self._data)

    def congruent(self, p: "Matrix") -> "Matrix":
        """``pᵀ · self · p``."""
        return p.T @ self @ p

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def max_abs(self):
        return max((abs(x) for r in self._data for x in r), default=mpq(0))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        return Matrix._raw(tuple(a + b for a, b in zip(self._data, other._data)), self.cols + other.cols)

    # -- elimination --------------------------------------------------------
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        rows, pivots = _rref([list(r) for r in self._data], self.cols)
        return Matrix._raw(tuple(tuple(r) for r in rows), self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(_rref([list(r) for r in self._data], self.cols)[1])

    def nullspace(self) -> list[tuple]:
        """Basis of ``{x : self @ x = 0}`` (one vector per free column)."""
        rows, pivots = _rref([list(r) for r in self._data], self.cols)
        return _nullspace_from_rref(rows, pivots, self.cols)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ShapeError("only square matrices are invertible")
        n = self.rows
        aug = [list(r) + [mpq(1) if i == j else mpq(0) for j in range(n)] for i, r in enumerate(self._data)]
        rows, pivots = _rref(aug, n)
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise SingularError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in rows[:n]), n)

    def det(self):
        if not self.is_square():
            raise ShapeError("determinant of a non-square matrix")
        a = [list(r) for r in self._data]
        n = self.rows
        d = mpq(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k] != 0), None)
            if p is None:
                return mpq(0)
            if p != k:
                a[k], a[p] = a[p], a[k]
                d = -d
            d = d * a[k][k]
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    f = a[i][k] / a[k][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return d


def _dot(u, v):
    s = mpq(0)
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def _rref(rows: list[list], ncols: int, limit: int | None = None):
    """In-place reduced row echelon form over the first ``limit`` columns."""
    limit = ncols if limit is None else limit
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _nullspace_from_rref(rows, pivots, ncols) -> list[tuple]:
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [mpq(0)] * ncols
        v[free] = mpq(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][free]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# signatures


class Signature(NamedTuple):
    positive: int
    negative: int
    zero: int

    @property
    def dim(self) -> int:
        return self.positive + self.negative + self.zero

    @property
    def is_lorentzian(self) -> bool:
        return self.negative == 1 and self.zero == 0 and self.positive >= 1

    @property
    def is_positive_definite(self) -> bool:
        return self.negative == 0 and self.zero == 0

    @property
    def is_negative_definite(self) -> bool:
        return self.positive == 0 and self.zero == 0

    @property
    def is_psd(self) -> bool:
        return self.negative == 0


def congruence_diagonalize(m: Matrix) -> tuple[Matrix, list]:
    """Return ``(P, d)`` with ``Pᵀ m P = diag(d)`` and ``P`` invertible.

    Symmetric Gaussian elimination; a zero pivot with a nonzero off-diagonal
    entry is repaired by the congruence ``e_k <- e_k ± e_j``.
    """
    if not m.is_symmetric():
        raise ShapeError("congruence diagonalization needs a symmetric matrix")
    n = m.rows
    a = [list(r) for r in m]
    p = [[mpq(1) if i == j else mpq(0) for j in range(n)] for i in range(n)]  # columns are the new basis

    def add_col(dst, src, f):
        # basis change e_dst <- e_dst + f e_src, applied as a congruence
        for i in range(n):
            p[i][dst] += f * p[i][src]
        for j in range(n):
            a[dst][j] += f * a[src][j]
        for i in range(n):
            a[i][dst] += f * a[i][src]

    def swap(i, j):
        for row in p:
            row[i], row[j] = row[j], row[i]
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                # a[j][j] == 0 here, so e_k + e_j has norm 2 a[k][j] != 0
                add_col(k, j, mpq(1))
        piv = a[k][k]
        for j in range(k + 1, n):
            if a[k][j] != 0:
                add_col(j, k, -a[k][j] / piv)
    return Matrix(p), [a[i][i] for i in range(n)]


def congruence_signature(m: Matrix) -> Signature:
    """Inertia of a symmetric matrix, exactly (Sylvester's law of inertia)."""
    _, d = congruence_diagonalize(m)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return Signature(pos, neg, len(d) - pos - neg)


# ---------------------------------------------------------------------------
# solving


class Solution(NamedTuple):
    particular: Matrix
    nullspace: list[tuple]


def solve(a: Matrix, b: Matrix) -> Solution | None:
    """Solve ``a @ X = b`` exactly.

    Returns one particular solution together with a basis of the
    nullspace of ``a``, or ``None`` when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise ShapeError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.cols
    aug = [list(r) + list(s) for r, s in zip(a, b)]
    rows, pivots = _rref(aug, n + b.cols, limit=n)
    rank = len(pivots)
    for r in rows[rank:]:
        if any(x != 0 for x in r[n:]):
            return None
    x = [[mpq(0)] * b.cols for _ in range(n)]
    for r, pc in enumerate(pivots):
        x[pc] = list(rows[r][n:])
    null = _nullspace_from_rref([r[:n] for r in rows], pivots, n)
    return Solution(Matrix._raw(tuple(tuple(r) for r in x), b.cols), null)


def solve_vector(a: Matrix, v: Sequence) -> tuple | None:
    sol = solve(a, Matrix.from_columns([v]))
    return None if sol is None else sol.particular.column(0)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Column span of a rational matrix inside ``Q^ambient_dim``."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [tuple(rational(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ShapeError("vector length does not match ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = Matrix.from_columns(_independent(vecs), rows=ambient_dim) if vecs else Matrix.zeros(ambient_dim, 0)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).columns())

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, [unit(n, i) for i in indices])

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple]:
        return self.basis.columns()

    def contains(self, v: Sequence) -> bool:
        v = tuple(rational(x) for x in v)
        if all(x == 0 for x in v):
            return True
        if self.dim == 0:
            return False
        return solve_vector(self.basis, v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim == 0:
            return True
        if self.dim > other.dim:
            return False
        return other.basis.hstack(self.basis).rank() == other.dim

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.dim == other.dim and self <= other

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient_dim)
        # a x = b y  <=>  [a | -b] (x, y) = 0
        null = self.basis.hstack(-other.basis).nullspace()
        return Subspace(self.ambient_dim, [self.basis @ v[: self.dim] for v in null])

    def coordinates(self, v: Sequence) -> tuple:
        c = solve_vector(self.basis, v)
        if c is None:
            raise ValueError("vector is not in the subspace")
        return c

    def complement(self) -> "Subspace":
        """Some complement spanned by standard unit vectors."""
        vecs = self.vectors()
        extra = []
        for i in range(self.ambient_dim):
            e = unit(self.ambient_dim, i)
            if Matrix.from_columns(vecs + extra + [e]).rank() > len(vecs) + len(extra):
                extra.append(e)
        return Subspace(self.ambient_dim, extra)

    def extend_to_basis(self) -> Matrix:
        """Square invertible matrix whose leading columns span ``self``."""
        return Matrix.from_columns(self.vectors() + self.complement().vectors(), rows=self.ambient_dim)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("subspaces live in different ambient spaces")

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _independent(vecs: list[tuple]) -> list[tuple]:
    if not vecs:
        return []
    m = Matrix.from_columns(vecs)
    _, pivots = m.rref()
    return [vecs[j] for j in pivots]


def unit(n: int, i: int) -> tuple:
    return tuple(mpq(1) if k == i else mpq(0) for k in range(n))


def primitive(v: Sequence) -> tuple:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    v = [rational(x) for x in v]
    nz = [x for x in v if x != 0]
    if not nz:
        return tuple(v)
    den = 1
    for x in nz:
        den = gmpy2.lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gmpy2.gcd(g, x)
    sign = 1 if nz[0] > 0 else -1
    return tuple(mpq(sign * x, int(g)) for x in ints)


# ---------------------------------------------------------------------------
# floating point, quarantined


def skew_spectrum(m: Matrix, tol: float = 1e-9) -> list[tuple[float, float]]:
    """Eigenvalues of ``m`` as ``(real, imag)`` pairs.

    Parts smaller than ``tol`` times the spectral scale are snapped to zero,
    so the ``±iλ`` pairs of a real skew-type operator come out clean.
    Sorted by imaginary part, then real part.
    """
    if not m.is_square():
        raise ShapeError("spectrum of a non-square matrix")
    if m.rows == 0:
        return []
    a = np.array([[float(x) for x in r] for r in m], dtype=float)
    ev = np.linalg.eigvals(a)
    scale = max(1.0, float(np.max(np.abs(ev))))
    out = []
    for z in ev:
        re = 0.0 if abs(z.real) <= tol * scale else float(z.real)
        im = 0.0 if abs(z.imag) <= tol * scale else float(z.imag)
        out.append((re, im))
    return sorted(out, key=lambda p: (p[1], p[0]))
