"""Symmetric bilinear forms on Lie algebras.

Ad-invariance, the (⋆) semidefiniteness test on chosen subspaces, and the
two-parameter normal form of invariant Lorentz forms on twisted Heisenberg
algebras.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Callable, NamedTuple, Sequence

from gmpy2 import mpq

from .errors import AlgebraTypeError, InvarianceError, ShapeError, SignatureError
from .linalg import (
    Matrix,
    QuadraticNumber,
    Signature,
    Subspace,
    congruence_diagonalize,
    congruence_signature,
    is_rational_square,
    primitive,
    rational_sqrt,
    unit,
)

if TYPE_CHECKING:
    from .lie import LieAlgebra, LinearMap


class SymmetricBilinearForm:
    """A symmetric matrix read in the basis of ``algebra`` (which may be None)."""

    __slots__ = ("matrix", "algebra", "__dict__")

    def __init__(self, matrix, algebra: "LieAlgebra | None" = None):
        m = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        if not m.is_symmetric():
            raise ShapeError("bilinear form matrix must be symmetric")
        if algebra is not None and m.rows != algebra.dim:
            raise ShapeError(f"form is {m.rows}x{m.cols} but algebra has dim {algebra.dim}")
        self.matrix = m
        self.algebra = algebra

    @cached_property
    def signature(self) -> Signature:
        return congruence_signature(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, x: Sequence, y: Sequence):
        m = self.matrix
        s = mpq(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = m.row(i)
            for j, yj in enumerate(y):
                if yj and row[j]:
                    s = s + xi * row[j] * yj
        return s

    def __eq__(self, other):
        if not isinstance(other, SymmetricBilinearForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SymmetricBilinearForm({self.matrix!r})"

    def __add__(self, other: "SymmetricBilinearForm") -> "SymmetricBilinearForm":
        return SymmetricBilinearForm(self.matrix + other.matrix, self.algebra)

    def scale(self, c) -> "SymmetricBilinearForm":
        return SymmetricBilinearForm(self.matrix.scale(c), self.algebra)

    def restrict(self, sub: Subspace) -> Matrix:
        """Gram matrix of the form on the columns of ``sub``."""
        return self.matrix.congruent(sub.basis)

    def pullback(self, p: Matrix) -> Matrix:
        return self.matrix.congruent(p)

    def is_lorentzian(self) -> bool:
        return self.signature.is_lorentzian


# ---------------------------------------------------------------------------
# ad-invariance


class InvarianceResidual(NamedTuple):
    value: object
    worst: tuple | None  # (generator index, j, k)

    def __bool__(self):
        # truthy when invariance fails, so ``if residual:`` reads naturally
        return self.value != 0


def _generator_vectors(g: "LieAlgebra", generators) -> list[tuple]:
    if generators is None:
        return [unit(g.dim, i) for i in range(g.dim)]
    if isinstance(generators, Subspace):
        return generators.vectors()
    return [tuple(v) for v in generators]


def ad_invariance_residual(g: "LieAlgebra", b, generators=None) -> InvarianceResidual:
    """max |b([x,e_j],e_k) + b(e_j,[x,e_k])| over generators x and basis pairs.

    ``generators`` may be a Subspace, a list of vectors or None (whole basis).
    """
    form = b if isinstance(b, SymmetricBilinearForm) else SymmetricBilinearForm(b)
    n = g.dim
    basis = [unit(n, j) for j in range(n)]
    best, worst = mpq(0), None
    for a, x in enumerate(_generator_vectors(g, generators)):
        images = [g.bracket(x, e) for e in basis]
        for j in range(n):
            for k in range(n):
                r = abs(form(images[j], basis[k]) + form(basis[j], images[k]))
                if r > best:
                    best, worst = r, (a, j, k)
    return InvarianceResidual(best, worst)


def invariant_forms(g: "LieAlgebra", generators=None) -> list[Matrix]:
    """Basis of the symmetric forms invariant under ad of the given generators.

    Solves the linear system b([x,e_j],e_k) + b(e_j,[x,e_k]) = 0 in the
    n(n+1)/2 upper-triangular unknowns.
    """
    n = g.dim
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    where = {}
    for idx, (i, j) in enumerate(pairs):
        where[i, j] = where[j, i] = idx
    rows = []
    for x in _generator_vectors(g, generators):
        ad = g.ad_matrix(x)
        for j in range(n):
            for k in range(j, n):
                # sum_m ad[m,j] b[m,k] + ad[m,k] b[j,m]
                row = [mpq(0)] * len(pairs)
                for m in range(n):
                    if ad[m, j]:
                        row[where[m, k]] += ad[m, j]
                    if ad[m, k]:
                        row[where[j, m]] += ad[m, k]
                if any(row):
                    rows.append(row)
    if rows:
        null = Matrix(rows).nullspace()
    else:
        null = [unit(len(pairs), i) for i in range(len(pairs))]
    out = []
    for v in null:
        m = [[mpq(0)] * n for _ in range(n)]
        for idx, (i, j) in enumerate(pairs):
            m[i][j] = m[j][i] = v[idx]
        out.append(Matrix(m))
    return out


# ---------------------------------------------------------------------------
# condition (⋆)


@dataclass(frozen=True)
class StarReport:
    psd: bool
    kernel_dim: int
    witness: tuple | None
    signature: Signature | None = None
    applicable: bool = True

    @property
    def passes(self) -> bool:
        return (not self.applicable) or (self.psd and self.kernel_dim <= 1)

    def to_json(self) -> dict:
        from .linalg import rat_str

        return {
            "psd": self.psd,
            "kernel_dim": self.kernel_dim,
            "witness": None if self.witness is None else [rat_str(x) for x in self.witness],
        }


def check_condition_star(
    b: SymmetricBilinearForm,
    v: Subspace,
    noncompact_dense: Callable[[Subspace], bool] | None = None,
) -> StarReport:
    """Is ``b`` positive semidefinite on ``v`` with kernel of dimension <= 1?

    The witness on failure is a vector of ``v`` (ambient coordinates, made
    primitive): one of negative norm if there is one, else a second kernel
    direction.  ``noncompact_dense`` is an optional predicate saying whether
    ``v`` is a subspace the condition quantifies over at all; when it answers
    False the report is marked not applicable and passes vacuously.
    """
    if not isinstance(b, SymmetricBilinearForm):
        b = SymmetricBilinearForm(b)
    if v.ambient_dim != b.dim:
        raise ShapeError("subspace is not inside the form's domain")
    applicable = True if noncompact_dense is None else bool(noncompact_dense(v))
    if v.dim == 0:
        return StarReport(True, 0, None, Signature(0, 0, 0), applicable)
    gram = b.restrict(v)
    p, d = congruence_diagonalize(gram)
    sig = Signature(sum(x > 0 for x in d), sum(x < 0 for x in d), sum(x == 0 for x in d))
    witness = None
    neg = [i for i, x in enumerate(d) if x < 0]
    zero = [i for i, x in enumerate(d) if x == 0]
    if neg:
        witness = primitive(v.basis @ p.column(neg[0]))
    elif len(zero) > 1:
        witness = primitive(v.basis @ p.column(zero[1]))
    return StarReport(sig.negative == 0, sig.zero, witness, sig, applicable)


def elliptic_heuristic(g: "LieAlgebra", x: Sequence, tol: float = 1e-9) -> bool:
    """Necessary condition for exp(tX) to have compact closure in Ad.

    ad_x must have purely imaginary spectrum and be semisimple.  Passing this
    does not prove precompactness, so it is only a heuristic stand-in for the
    caller-supplied predicate of ``check_condition_star``.
    """
    import sympy

    ad = g.ad_matrix(x)
    from .linalg import skew_spectrum

    if any(re != 0.0 for re, _ in skew_spectrum(ad, tol)):
        return False
    sm = sympy.Matrix([[sympy.Rational(int(c.numerator), int(c.denominator)) for c in row] for row in ad])
    return bool(sm.is_diagonalizable(reals_only=False))


# ---------------------------------------------------------------------------
# twisted Heisenberg normal form


def _require_twisted(s: "LieAlgebra"):
    can = s.canonical
    if can is None or can.kind != "twisted_heisenberg":
        raise AlgebraTypeError("expected a twisted Heisenberg algebra with its canonical basis")
    return can


@dataclass(frozen=True)
class NormalForm:
    mu: mpq
    nu: mpq
    automorphism: "LinearMap"
    exact_rational: bool = field(default=True)


def lorentz_normal_form(s: "LieAlgebra", b) -> NormalForm:
    """Parameters (mu, nu) of an invariant Lorentz form and an automorphism L
    with b(L., L.) equal to the standard form.

    mu = b(T,Z) = b(X_k,X_k), nu = b(T,T).  L maps T to T - (nu/2mu) Z, Z to Z/mu
    and scales every X_k, Y_k by 1/sqrt(mu).  When mu is not a rational square
    the matrix of L has entries in Q(sqrt(mu)).
    """
    from .lie import LinearMap
    from .zoo import standard_lorentz_form

    can = _require_twisted(s)
    form = b if isinstance(b, SymmetricBilinearForm) else SymmetricBilinearForm(b, s)
    res = ad_invariance_residual(s, form)
    if res:
        raise InvarianceError(f"form is not ad-invariant (residual {res.value} at {res.worst})")
    if not form.signature.is_lorentzian:
        raise SignatureError(f"form has signature {tuple(form.signature)}, expected Lorentzian")
    ti, zi = can.index("T"), can.index("Z")
    mu = form.matrix[ti, zi]
    nu = form.matrix[ti, ti]
    # the forced shape: mu * standard + nu * T*(x)T*
    std = standard_lorentz_form(s).matrix
    expected = std.scale(mu) + Matrix([[nu if (i == ti and j == ti) else 0 for j in range(s.dim)] for i in range(s.dim)])
    if form.matrix != expected:
        raise InvarianceError("invariant form does not have the two-parameter shape")
    if mu <= 0:
        raise SignatureError("mu must be positive for a Lorentzian invariant form")

    if is_rational_square(mu):
        c = 1 / rational_sqrt(mu)
        exact = True
    else:
        c = QuadraticNumber(0, 1 / mu, mu)  # 1/sqrt(mu) = sqrt(mu)/mu
        exact = False
    n = s.dim
    cols = []
    for j in range(n):
        if j == ti:
            v = [mpq(0)] * n
            v[ti] = mpq(1)
            v[zi] = -nu / (2 * mu)
        elif j == zi:
            v = [mpq(0)] * n
            v[zi] = 1 / mu
        else:
            v = [mpq(0)] * n
            v[j] = c
        cols.append(v)
    lmap = LinearMap(s, s, Matrix.from_columns(cols))
    return NormalForm(mu, nu, lmap, exact)


@dataclass(frozen=True)
class InvarianceEquivalence:
    nilradical_residual: object
    full_residual: object

    @property
    def consistent(self) -> bool:
        return (self.nilradical_residual == 0) == (self.full_residual == 0)


def verify_invariance_equivalence(s: "LieAlgebra", b) -> InvarianceEquivalence:
    """Residuals under ad(nilradical) and under ad(whole algebra)."""
    can = _require_twisted(s)
    nil = [unit(s.dim, i) for i in range(s.dim) if i != can.index("T")]
    return InvarianceEquivalence(
        ad_invariance_residual(s, b, nil).value,
        ad_invariance_residual(s, b).value,
    )
