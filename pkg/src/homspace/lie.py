"""Finite-dimensional Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from gmpy2 import mpq

from .errors import JacobiError, ShapeError, SingularError
from .forms import SymmetricBilinearForm
from .linalg import Matrix, QuadraticNumber, Subspace, rational, unit


class JacobiReport(NamedTuple):
    antisymmetry: object
    jacobi: object
    worst: tuple | None

    @property
    def residual(self):
        return max(self.antisymmetry, self.jacobi)

    @property
    def ok(self) -> bool:
        return self.residual == 0


def _abs_max(values: Iterable):
    values = list(values)
    if all(v == 0 for v in values):
        return mpq(0)
    if all(isinstance(v, type(mpq(0))) for v in values):
        return max((abs(v) for v in values), default=mpq(0))
    return max((abs(float(v)) for v in values), default=0.0)


def _tensor(structure, n: int) -> tuple:
    try:
        t = tuple(tuple(tuple(rational(c) for c in structure[i][j]) for j in range(n)) for i in range(n))
    except (IndexError, TypeError) as exc:
        raise ShapeError("structure tensor must be n x n x n") from exc
    if any(len(t[i][j]) != n for i in range(n) for j in range(n)):
        raise ShapeError("structure tensor must be n x n x n")
    return t


def verify_jacobi(g) -> JacobiReport:
    """Antisymmetry and Jacobi residuals of a structure tensor (or algebra).

    Accepts raw tensors too, so tampered data can be inspected without the
    constructor refusing it.
    """
    c = g.structure if isinstance(g, LieAlgebra) else g
    n = len(c)
    c = _tensor(c, n)
    worst = None
    anti = mpq(0)
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                r = abs(c[i][j][k] + c[j][i][k])
                if r > anti:
                    anti, worst = r, ("antisymmetry", i, j, k)
    jac = mpq(0)
    jworst = None
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                # sum over cyclic (i,j,k) of [[e_i,e_j],e_k]
                for out in range(n):
                    s = mpq(0)
                    for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
                        for m in range(n):
                            if c[a][b][m]:
                                s += c[a][b][m] * c[m][cc][out]
                    if abs(s) > jac:
                        jac, jworst = abs(s), ("jacobi", i, j, k)
    if worst is None or (jac > anti):
        worst = jworst
    return JacobiReport(anti, jac, worst)


class LieAlgebra:
    """A Lie algebra over Q with basis e_0..e_{n-1}.

    ``structure[i][j][k]`` is the coefficient of e_k in [e_i, e_j].  The
    constructor refuses tensors that are not antisymmetric or violate Jacobi.
    """

    def __init__(
        self,
        labels: Sequence[str],
        structure,
        *,
        name: str | None = None,
        canonical=None,
        check: bool = True,
    ):
        self.labels = tuple(str(s) for s in labels)
        self.dim = n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("basis labels must be unique")
        self.structure = _tensor(structure, n)
        self.name = name
        self.canonical = canonical
        if check:
            rep = verify_jacobi(self.structure)
            if not rep.ok:
                raise JacobiError(f"not a Lie algebra: residual {rep.residual} at {rep.worst}")
        self._pairs = tuple(
            (i, j, tuple((k, c) for k, c in enumerate(self.structure[i][j]) if c))
            for i in range(n)
            for j in range(n)
            if i != j and any(self.structure[i][j])
        )

    @classmethod
    def from_brackets(cls, labels: Sequence[str], brackets: Mapping, **kw) -> "LieAlgebra":
        """Build from ``{(i, j): {k: c}}`` with i, j, k given as indices or labels.

        Only one of each pair (i, j) / (j, i) needs listing.
        """
        labels = list(labels)
        n = len(labels)
        idx = {lab: i for i, lab in enumerate(labels)}

        def ix(a):
            return idx[a] if isinstance(a, str) else int(a)

        c = [[[mpq(0)] * n for _ in range(n)] for _ in range(n)]
        for (a, b), terms in brackets.items():
            i, j = ix(a), ix(b)
            items = terms.items() if isinstance(terms, Mapping) else enumerate(terms)
            for k, v in items:
                v = rational(v)
                c[i][j][ix(k)] += v
                c[j][i][ix(k)] -= v
        return cls(labels, c, **kw)

    def __repr__(self):
        return f"LieAlgebra({self.name or 'dim=%d' % self.dim})"

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.structure == other.structure

    def __hash__(self):
        return hash(self.structure)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis_vector(self, i) -> tuple:
        if isinstance(i, str):
            i = self.index(i)
        return unit(self.dim, i)

    def vector(self, combo: Mapping[str, object]) -> tuple:
        """Coordinates of a labelled combination, e.g. ``{"T": 1, "Z": -1}``."""
        v = [mpq(0)] * self.dim
        for lab, c in combo.items():
            v[self.index(lab)] += rational(c)
        return tuple(v)

    # -- brackets ------------------------------------------------------------
    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError(f"vectors must have length {self.dim}")
        out = [mpq(0)] * self.dim
        for i, j, terms in self._pairs:
            xi = x[i]
            if not xi:
                continue
            yj = y[j]
            if not yj:
                continue
            f = xi * yj
            for k, c in terms:
                out[k] = out[k] + f * c
        return tuple(out)

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y]."""
        n = self.dim
        cols = [self.bracket(x, unit(n, j)) for j in range(n)]
        return Matrix.from_columns(cols, rows=n) if n else Matrix.zeros(0, 0)

    def ad(self, x: Sequence) -> "LinearMap":
        return LinearMap(self, self, self.ad_matrix(x))

    def killing_matrix(self) -> Matrix:
        n = self.dim
        ads = [self.ad_matrix(unit(n, i)) for i in range(n)]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                a, b = ads[i], ads[j]
                row.append(sum((a[p, q] * b[q, p] for p in range(n) for q in range(n) if a[p, q] and b[q, p]), mpq(0)))
            rows.append(row)
        return Matrix(rows) if n else Matrix.zeros(0, 0)

    def killing_form(self) -> SymmetricBilinearForm:
        return SymmetricBilinearForm(self.killing_matrix(), algebra=self)

    # -- subspaces -----------------------------------------------------------
    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace(self.dim, vectors)

    def span_labels(self, labels: Iterable[str]) -> Subspace:
        return Subspace(self.dim, [self.basis_vector(lab) for lab in labels])

    def bracket_span(self, a: Subspace, b: Subspace) -> Subspace:
        return Subspace(self.dim, [self.bracket(x, y) for x in a.vectors() for y in b.vectors()])

    def derived(self) -> Subspace:
        return self.bracket_span(self.full(), self.full())

    def centralizer(self, sub: Subspace) -> Subspace:
        """``{x : [x, s] = 0 for all s in sub}``."""
        n = self.dim
        if sub.dim == 0:
            return self.full()
        rows = []
        for s in sub.vectors():
            # [x, s] = -ad_s x
            rows.extend(self.ad_matrix(s).tolist())
        return Subspace(n, Matrix(rows).nullspace())

    def center(self) -> Subspace:
        return self.centralizer(self.full())

    def lower_central_series(self) -> list[Subspace]:
        series = [self.full()]
        while True:
            nxt = self.bracket_span(self.full(), series[-1])
            if nxt.dim == series[-1].dim:
                return series
            series.append(nxt)

    def derived_series(self) -> list[Subspace]:
        series = [self.full()]
        while True:
            nxt = self.bracket_span(series[-1], series[-1])
            if nxt.dim == series[-1].dim:
                return series
            series.append(nxt)

    def is_abelian(self) -> bool:
        return not self._pairs

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].dim == 0

    def nilpotency_class(self) -> int | None:
        lcs = self.lower_central_series()
        return len(lcs) - 1 if lcs[-1].dim == 0 else None

    def is_subalgebra(self, sub: Subspace) -> bool:
        return self.bracket_span(sub, sub) <= sub

    def is_ideal(self, sub: Subspace) -> bool:
        return self.bracket_span(self.full(), sub) <= sub

    def ideal_generated(self, sub: Subspace) -> Subspace:
        cur = sub
        while True:
            nxt = cur + self.bracket_span(self.full(), cur)
            if nxt.dim == cur.dim:
                return cur
            cur = nxt

    def restrict(self, sub: Subspace, labels: Sequence[str] | None = None) -> "LieAlgebra":
        """The subalgebra ``sub`` as a Lie algebra in the basis of ``sub``'s columns."""
        if not self.is_subalgebra(sub):
            raise ValueError("subspace is not closed under the bracket")
        vecs = sub.vectors()
        k = len(vecs)
        c = [[sub.coordinates(self.bracket(vecs[a], vecs[b])) for b in range(k)] for a in range(k)]
        labels = labels or [f"v{a + 1}" for a in range(k)]
        return LieAlgebra(labels, c)


@dataclass(frozen=True)
class LinearMap:
    source: LieAlgebra
    target: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeError("matrix shape does not match source/target dimensions")

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix @ v

    def bracket_residual(self):
        """max |phi[x,y] - [phi x, phi y]| over source basis pairs (0 for a homomorphism)."""
        n = self.source.dim
        cols = self.matrix.columns()
        vals = []
        for i in range(n):
            for j in range(i + 1, n):
                lhs = self.matrix @ self.source.bracket(unit(n, i), unit(n, j))
                rhs = self.target.bracket(cols[i], cols[j])
                vals.extend(a - b for a, b in zip(lhs, rhs))
        return _abs_max(vals)

    def is_homomorphism(self) -> bool:
        return self.bracket_residual() == 0


def direct_sum(gs: Sequence[LieAlgebra]) -> LieAlgebra:
    from .zoo import CanonicalBasis

    n = sum(g.dim for g in gs)
    c = [[[mpq(0)] * n for _ in range(n)] for _ in range(n)]
    off = 0
    for g in gs:
        for i in range(g.dim):
            for j in range(g.dim):
                for k in range(g.dim):
                    c[off + i][off + j][off + k] = g.structure[i][j][k]
        off += g.dim
    labels = [lab for g in gs for lab in g.labels]
    if len(set(labels)) != len(labels):
        labels = [f"{lab}_{f + 1}" for f, g in enumerate(gs) for lab in g.labels]
    canonical = None
    if all(g.canonical is not None for g in gs):
        roles = tuple(r for g in gs for r in g.canonical.roles)
        canonical = CanonicalBasis("direct_sum", roles, tuple(g.canonical for g in gs))
    name = "+".join(g.name or f"g{g.dim}" for g in gs)
    return LieAlgebra(labels, c, name=name, canonical=canonical, check=False)


def change_basis(g: LieAlgebra, p: Matrix, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Rewrite ``g`` in the basis given by the columns of ``p``.

    New basis vector a is ``sum_i p[i, a] e_i``.  Raises ``SingularError``
    for non-invertible ``p``.  The result is re-verified.
    """
    if p.shape != (g.dim, g.dim):
        raise ShapeError("change of basis must be a square matrix of size dim")
    pinv = p.inverse()
    cols = p.columns()
    n = g.dim
    c = [[pinv @ g.bracket(cols[a], cols[b]) for b in range(n)] for a in range(n)]
    if any(isinstance(x, (QuadraticNumber, float)) for row in c for v in row for x in v):
        raise TypeError("change_basis needs a rational matrix")
    return LieAlgebra(labels or g.labels, c, name=g.name)


__all__ = [
    "JacobiReport",
    "LieAlgebra",
    "LinearMap",
    "SingularError",
    "change_basis",
    "direct_sum",
    "verify_jacobi",
]
