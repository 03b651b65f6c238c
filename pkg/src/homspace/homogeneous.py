"""Reductive models g = m + h and their Ricci curvature.

Two independent routes to the Ricci tensor: the Nomizu construction on m
(``nomizu_ricci``) and the specialized quadratic formula for models built
on a twisted Heisenberg ideal (``ricci_specialized``).  Their agreement is
the main cross-check of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from gmpy2 import mpq

from .errors import (
    AlgebraTypeError,
    DegenerateIsotropyError,
    DomainError,
    InconsistencyError,
    JacobiError,
    SignatureError,
    SingularError,
)
from .forms import SymmetricBilinearForm
from .lie import LieAlgebra
from .linalg import Matrix, Subspace, congruence_diagonalize, rational, unit
from .zoo import make_twisted_heisenberg, standard_lorentz_form

Vec = tuple


def _axpy(acc: list, a, v: Sequence):
    if a:
        for k, x in enumerate(v):
            if x:
                acc[k] += a * x


def _dot(u: Sequence, v: Sequence):
    s = mpq(0)
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def _matvec(rows, v: Sequence) -> list:
    return [_dot(r, v) for r in rows]


class ReductiveModel:
    """An infinitesimal model: g, isotropy h, complement m = s + p, metric on m.

    Coordinates on m are taken w.r.t. ``m_basis`` (vectors of g); the first
    ``s_dim`` of them span s, the rest span p.  ``t_index`` / ``z_index`` mark
    the lightlike pair inside s for twisted Heisenberg models.
    """

    def __init__(
        self,
        g: LieAlgebra,
        h: Subspace,
        m_basis: Sequence[Sequence],
        metric,
        *,
        s_dim: int | None = None,
        t_index: int | None = None,
        z_index: int | None = None,
        lam: Sequence | None = None,
        zz_in_N=1,
        name: str | None = None,
    ):
        self.g = g
        self.h = h
        self.m_basis = [tuple(rational(x) for x in v) for v in m_basis]
        self.n = n = len(self.m_basis)
        self.s_dim = n if s_dim is None else s_dim
        self.t_index, self.z_index = t_index, z_index
        self.lam = None if lam is None else tuple(rational(x) for x in lam)
        self.zz_in_N = rational(zz_in_N)
        self.name = name
        self.metric = metric if isinstance(metric, SymmetricBilinearForm) else SymmetricBilinearForm(metric)
        if self.metric.dim != n:
            raise DomainError("metric size does not match dim m")
        if self.zz_in_N <= 0:
            raise DomainError("zz_in_N must be positive")

        hv = h.vectors()
        if n + len(hv) != g.dim:
            raise DomainError("dim m + dim h must equal dim g")
        try:
            self._split = Matrix.from_columns(self.m_basis + hv, rows=g.dim).inverse()
        except SingularError:
            raise DomainError("m and h intersect nontrivially") from None
        self._h_basis = hv
        self.h_dim = len(hv)

        # bracket tables in m coordinates
        self._mb = [[None] * n for _ in range(n)]
        self._hb = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if j < i:
                    self._mb[i][j] = tuple(-x for x in self._mb[j][i])
                    self._hb[i][j] = tuple(-x for x in self._hb[j][i])
                    continue
                c = self._split @ g.bracket(self.m_basis[i], self.m_basis[j])
                self._mb[i][j], self._hb[i][j] = c[:n], c[n:]
        # isotropy action on m; rows indexed by output coordinate
        self._adh = []
        for hk in hv:
            cols = []
            for j in range(n):
                c = self._split @ g.bracket(hk, self.m_basis[j])
                if any(c[n:]):
                    raise DomainError("[h, m] is not contained in m")
                cols.append(c[:n])
            self._adh.append([[cols[j][a] for j in range(n)] for a in range(n)])

        G = self.metric.matrix
        if self.metric.signature.zero:
            raise SignatureError("metric on m is degenerate")
        self._G = [list(r) for r in G]
        self._Ginv = [list(r) for r in G.inverse()]
        self._validate_split()
        for A in self._adh:
            # <[H,x],y> + <x,[H,y]> = 0, i.e. A^T G + G A = 0
            AtG = Matrix(A).T @ G
            if not (AtG + AtG.T).is_zero():
                raise DomainError("metric on m is not ad(h)-invariant")

    # -- validation ---------------------------------------------------------
    def _validate_split(self):
        G = self.metric.matrix
        s, n = self.s_dim, self.n
        if any(G[i, j] for i in range(s) for j in range(s, n)):
            raise DomainError("s and p are not orthogonal")
        if n > s:
            p_block = G.submatrix(range(s, n), range(s, n))
            sig = SymmetricBilinearForm(p_block).signature
            if not sig.is_positive_definite:
                raise SignatureError(f"metric on p has signature {tuple(sig)}, expected positive definite")
        t, z = self.t_index, self.z_index
        if t is not None:
            if z is None:
                raise DomainError("T given without Z")
            for i in range(s):
                for j in range(s):
                    if {i, j} == {t, z}:
                        want = 1
                    elif i == j and i not in (t, z):
                        want = 1
                    else:
                        want = 0
                    if G[i, j] != want:
                        raise SignatureError("metric on s is not in the normalized form")

    # -- subspaces of g -----------------------------------------------------
    @property
    def m(self) -> Subspace:
        return Subspace(self.g.dim, self.m_basis)

    @property
    def s_part(self) -> Subspace:
        return Subspace(self.g.dim, self.m_basis[: self.s_dim])

    @property
    def p_part(self) -> Subspace:
        return Subspace(self.g.dim, self.m_basis[self.s_dim :])

    @property
    def p_dim(self) -> int:
        return self.n - self.s_dim

    @property
    def p_indices(self) -> list[int]:
        return list(range(self.s_dim, self.n))

    def to_g(self, x: Sequence) -> tuple:
        out = [mpq(0)] * self.g.dim
        for c, v in zip(x, self.m_basis):
            _axpy(out, c, v)
        return tuple(out)

    # -- brackets and metric in m coordinates -------------------------------
    def inner(self, x: Sequence, y: Sequence):
        return self.metric(x, y)

    def bracket_m(self, x: Sequence, y: Sequence) -> tuple:
        out = [mpq(0)] * self.n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        _axpy(out, xi * yj, self._mb[i][j])
        return tuple(out)

    def bracket_h(self, x: Sequence, y: Sequence) -> tuple:
        out = [mpq(0)] * self.h_dim
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        _axpy(out, xi * yj, self._hb[i][j])
        return tuple(out)

    def u_map(self, x: Sequence, y: Sequence) -> tuple:
        """U(x,y) with 2<U(x,y),w> = <[w,x]_m, y> + <x, [w,y]_m>."""
        r = []
        for w in range(self.n):
            e = unit(self.n, w)
            r.append((self.inner(self.bracket_m(e, x), y) + self.inner(x, self.bracket_m(e, y))) / 2)
        return tuple(_matvec(self._Ginv, r))

    # -- twisted Heisenberg shape -------------------------------------------
    def _require_heisenberg(self):
        if self.t_index is None or self.lam is None:
            raise AlgebraTypeError("model has no twisted Heisenberg part")

    def z_coefficient(self, x: Sequence):
        return x[self.z_index]

    def t_pair(self, x: Sequence, y: Sequence):
        """<x_T, y_Z>: T-component of x against Z-component of y."""
        t, z = self.t_index, self.z_index
        return x[t] * y[z] * self.metric.matrix[t, z]

    def v_map(self, x: Sequence, y: Sequence) -> tuple:
        """V(x,y) in p with 2<V(x,y),w> = <[w_p,x_p]_Z, y_T> + <x_T, [w_p,y_p]_Z>."""
        self._require_heisenberg()
        n, t, z = self.n, self.t_index, self.z_index
        tz = self.metric.matrix[t, z]
        xp, yp = self._p_only(x), self._p_only(y)
        r = [mpq(0)] * n
        for w in self.p_indices:
            e = unit(n, w)
            r[w] = (self.bracket_m(e, xp)[z] * y[t] * tz + x[t] * self.bracket_m(e, yp)[z] * tz) / 2
        out = tuple(_matvec(self._Ginv, r))
        if any(out[i] for i in range(self.s_dim)):
            raise InconsistencyError("V left p")
        return out

    def _p_only(self, x: Sequence) -> tuple:
        return tuple(x[i] if i >= self.s_dim else mpq(0) for i in range(self.n))

    def __repr__(self):
        return f"ReductiveModel({self.name or 'dim m=%d' % self.n})"


# ---------------------------------------------------------------------------
# construction


def reductive_complement(g: LieAlgebra, h: Subspace, kappa) -> Subspace:
    """The kappa-orthogonal complement of h, which is Ad(h)-stable for invariant kappa."""
    form = kappa if isinstance(kappa, SymmetricBilinearForm) else SymmetricBilinearForm(kappa)
    if h.dim == 0:
        return g.full()
    if form.restrict(h).det() == 0:
        raise DegenerateIsotropyError("kappa is degenerate on h")
    rows = (h.basis.T @ form.matrix).tolist()
    m = Subspace(g.dim, Matrix(rows).nullspace())
    if not g.bracket_span(h, m) <= m:
        raise InconsistencyError("complement is not ad(h)-stable; is kappa invariant?")
    return m


def _bracket_table(brackets, labels: Sequence[str]) -> dict:
    """Normalize bracket input: JSON-style list or {(a,b): {k: c}} mapping."""
    if isinstance(brackets, Mapping):
        return dict(brackets)
    out = {}
    for item in brackets or ():
        out[labels[int(item["i"])], labels[int(item["j"])]] = {
            labels[int(t["k"])]: rational(t["c"]) for t in item["terms"]
        }
    return out


def build_heisenberg_model(
    lam: Sequence,
    p_dim: int,
    p_brackets=None,
    p_metric=None,
    *,
    h_dim: int = 0,
    zz_in_N=1,
    name: str | None = None,
) -> ReductiveModel:
    """g = he_d^λ + p (+ h) with [s, p] = [s, h] = 0.

    ``p_brackets`` describes [p,p], [h,p], [h,h] on the labels
    W1..Wp, then Z, then H1..Hh (indices 0..p_dim-1, p_dim, p_dim+1.. in the
    JSON form).  Z must stay central.  ``p_metric`` defaults to the identity.
    """
    s = make_twisted_heisenberg(lam)
    w_labels = [f"W{i + 1}" for i in range(p_dim)]
    h_labels = [f"H{i + 1}" for i in range(h_dim)]
    local = w_labels + ["Z"] + h_labels
    table = _bracket_table(p_brackets, local)
    labels = list(s.labels) + w_labels + h_labels
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    c = [[[mpq(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(s.dim):
        for j in range(s.dim):
            c[i][j][: s.dim] = list(s.structure[i][j])
    for (a, b), terms in table.items():
        if "Z" in (a, b):
            raise JacobiError("Z must be central")
        i, j = idx[a], idx[b]
        for k, v in terms.items():
            v = rational(v)
            c[i][j][idx[k]] += v
            c[j][i][idx[k]] -= v
    g = LieAlgebra(labels, c, name=f"{s.name}+c")
    metric_p = Matrix.identity(p_dim) if p_metric is None else Matrix(p_metric)
    m_idx = [i for i in range(n) if labels[i] not in h_labels]
    m_basis = [unit(n, i) for i in m_idx]
    h = Subspace(n, [unit(n, idx[lab]) for lab in h_labels])
    G = [[mpq(0)] * len(m_idx) for _ in m_idx]
    std = standard_lorentz_form(s).matrix
    for i in range(s.dim):
        for j in range(s.dim):
            G[i][j] = std[i, j]
    for a in range(p_dim):
        for b in range(p_dim):
            G[s.dim + a][s.dim + b] = metric_p[a, b]
    return ReductiveModel(
        g,
        h,
        m_basis,
        Matrix(G),
        s_dim=s.dim,
        t_index=s.canonical.index("T"),
        z_index=s.canonical.index("Z"),
        lam=s.canonical.params,
        zz_in_N=zz_in_N,
        name=name,
    )


def build_product_model(s: LieAlgebra, s_metric, p: LieAlgebra | None = None, p_metric=None) -> ReductiveModel:
    """Metric product s + p of two algebras with h = 0 (e.g. sl2 with its Killing form)."""
    from .lie import direct_sum

    g = direct_sum([s, p]) if p is not None else s
    n = g.dim
    ps = 0 if p is None else p.dim
    sm = s_metric.matrix if isinstance(s_metric, SymmetricBilinearForm) else Matrix(s_metric)
    pm = Matrix.identity(ps) if p_metric is None else Matrix(p_metric)
    G = [[mpq(0)] * n for _ in range(n)]
    for i in range(s.dim):
        for j in range(s.dim):
            G[i][j] = sm[i, j]
    for a in range(ps):
        for b in range(ps):
            G[s.dim + a][s.dim + b] = pm[a, b]
    return ReductiveModel(g, Subspace(n), [unit(n, i) for i in range(n)], Matrix(G), s_dim=s.dim, name=g.name)


def pure_s_model(lam: Sequence) -> ReductiveModel:
    return build_heisenberg_model(lam, 0, name="pure-S")


# ---------------------------------------------------------------------------
# Nomizu oracle


def nomizu_ricci(model: ReductiveModel, *, include_isotropy: bool = True) -> Matrix:
    """Ricci tensor of the invariant metric, as a matrix in m coordinates.

    Lambda(X)Y = 1/2 [X,Y]_m + U(X,Y),
    R(X,Y) = [Lambda(X), Lambda(Y)] - Lambda([X,Y]_m) - ad([X,Y]_h),
    Ric(Y,W) = trace of X -> R(X,Y)W.
    """
    n = model.n
    mb, hb, adh = model._mb, model._hb, model._adh
    G, Ginv = model._G, model._Ginv
    # GB[w][i][j] = <[e_w, e_i]_m, e_j>
    GB = [[_matvec(G, mb[w][i]) for i in range(n)] for w in range(n)]
    L = [[None] * n for _ in range(n)]  # L[a][c] = Lambda(e_a) e_c
    for a in range(n):
        for c in range(a, n):
            r = [(GB[w][a][c] + GB[w][c][a]) / 2 for w in range(n)]
            u = _matvec(Ginv, r)
            L[a][c] = [x / 2 + y for x, y in zip(mb[a][c], u)]
            if c != a:
                L[c][a] = [-x / 2 + y for x, y in zip(mb[a][c], u)]
    tau = [sum((L[a][k][a] for a in range(n)), mpq(0)) for k in range(n)]
    ric = [[mpq(0)] * n for _ in range(n)]
    for b in range(n):
        for c in range(n):
            total = _dot(L[b][c], tau)
            for a in range(n):
                lac = L[a][c]
                lb = L[b]
                for k in range(n):
                    if lac[k]:
                        total -= lac[k] * lb[k][a]
                mab = mb[a][b]
                for k in range(n):
                    if mab[k]:
                        total -= mab[k] * L[k][c][a]
                if include_isotropy:
                    for q, hq in enumerate(hb[a][b]):
                        if hq:
                            total -= hq * adh[q][a][c]
            ric[b][c] = total
    return Matrix(ric)


# ---------------------------------------------------------------------------
# the specialized formula


def _n_model(model: ReductiveModel) -> ReductiveModel:
    """The leaf model on m' = p + RZ with Riemannian metric (p-block, zz_in_N)."""
    g = model.g
    pz = [model.m_basis[i] for i in model.p_indices] + [model.m_basis[model.z_index]]
    sub = Subspace(g.dim, pz + model._h_basis)
    k = len(pz)
    try:
        gn = g.restrict(sub, labels=[f"n{i}" for i in range(sub.dim)])
    except ValueError:
        raise AlgebraTypeError("p + RZ + h is not a subalgebra") from None
    G = model.metric.matrix
    pi = model.p_indices
    metric = [[G[a, b] for b in pi] + [mpq(0)] for a in pi] + [[mpq(0)] * (k - 1) + [model.zz_in_N]]
    h = Subspace(gn.dim, [unit(gn.dim, i) for i in range(k, gn.dim)])
    return ReductiveModel(gn, h, [unit(gn.dim, i) for i in range(k)], Matrix(metric), name="N")


def _orthogonal_p_basis(model: ReductiveModel) -> list[tuple[tuple, mpq]]:
    """Orthogonal basis of p (m coordinates) with squared norms."""
    pi = model.p_indices
    if not pi:
        return []
    block = model.metric.matrix.submatrix(pi, pi)
    P, d = congruence_diagonalize(block)
    out = []
    for j in range(len(pi)):
        v = [mpq(0)] * model.n
        for a, i in enumerate(pi):
            v[i] = P[a, j]
        out.append((tuple(v), d[j]))
    return out


@dataclass(frozen=True)
class PositivityCertificate:
    lambda_term: mpq
    bracket_term: mpq
    ric_tt: mpq

    @property
    def total(self) -> mpq:
        return self.lambda_term + self.bracket_term

    @property
    def holds(self) -> bool:
        return self.lambda_term > 0 and self.bracket_term >= 0 and self.ric_tt == self.total


@dataclass(frozen=True)
class CurvatureReport:
    ricci: Matrix
    ricci_specialized: Matrix
    max_discrepancy: mpq
    special: bool
    positivity_certificate: PositivityCertificate


class _Formula:
    """Evaluates the specialized Ricci quadratic form of a Heisenberg-shaped model."""

    def __init__(self, model: ReductiveModel, u_cross=1, n_isotropy: bool = True):
        model._require_heisenberg()
        self.model = model
        self.u_cross = rational(u_cross)
        self.n_isotropy = n_isotropy
        sd = model.s_dim
        self.ric_s = nomizu_ricci(pure_s_model(model.lam))
        self.N = _n_model(model)
        self.ric_n = nomizu_ricci(self.N, include_isotropy=n_isotropy)
        self.zz = model.zz_in_N
        self.W = [(self._to_n(v), norm) for v, norm in _orthogonal_p_basis(model)]
        self.kp = model.p_dim  # index of Z in N coordinates
        self.tz = model.metric.matrix[model.t_index, model.z_index]
        if sd != self.ric_s.rows:
            raise AlgebraTypeError("s part does not match the twisted Heisenberg factor")

    def _to_n(self, x: Sequence) -> tuple:
        return tuple(x[i] for i in self.model.p_indices) + (mpq(0),)

    def _nb(self, a, b) -> tuple:
        return self.N.bracket_m(a, b)

    def _zc(self, v) -> mpq:
        return v[self.kp]

    def quadratic(self, x: Sequence) -> mpq:
        md, N = self.model, self.N
        xs = x[: md.s_dim]
        xp = self._to_n(x)
        xt = x[md.t_index] * self.tz  # <X_T, c Z> = xt * c
        q = self.ric_s.congruent(Matrix.from_columns([xs]))[0, 0] if md.s_dim else mpq(0)
        q += self.ric_n.congruent(Matrix.from_columns([xp]))[0, 0]
        zvec = unit(self.kp + 1, self.kp)
        uz = N.u_map(xp, zvec)
        q -= N.inner(uz, uz) / self.zz
        for w, nw in self.W:
            inner = self._nb(w, xp)
            q -= xt * self._zc(self._nb(w, inner)) / (2 * nw)
            zpart = self._zc(self._nb(xp, w))
            q += mpq(3, 4) * N.inner(tuple(zpart if i == self.kp else 0 for i in range(self.kp + 1)),
                                     tuple(zpart if i == self.kp else 0 for i in range(self.kp + 1))) / nw
            q += self.u_cross * xt * self._zc(self._nb(N.u_map(xp, w), w)) / nw
            q -= xt * self._zc(self._nb(N.u_map(w, w), xp)) / nw
            for v, nv in self.W:
                q += (xt * self._zc(self._nb(v, w))) ** 2 / (4 * nw * nv)
        return q

    def matrix(self) -> Matrix:
        n = self.model.n
        diag = [self.quadratic(unit(n, i)) for i in range(n)]
        out = [[mpq(0)] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = diag[i]
            for j in range(i + 1, n):
                v = tuple(mpq(1) if k in (i, j) else mpq(0) for k in range(n))
                out[i][j] = out[j][i] = (self.quadratic(v) - diag[i] - diag[j]) / 2
        return Matrix(out)


def ricci_specialized_matrix(model: ReductiveModel, *, u_cross=1, n_isotropy: bool = True) -> Matrix:
    return _Formula(model, u_cross, n_isotropy).matrix()


def special_tests(model: ReductiveModel) -> tuple[bool, bool]:
    """(bracket test [p,p]_Z = 0, V vanishes on all basis pairs of m)."""
    model._require_heisenberg()
    pi, n, z = model.p_indices, model.n, model.z_index
    bracket = all(model.bracket_m(unit(n, a), unit(n, b))[z] == 0 for a in pi for b in pi if a < b)
    v_zero = all(not any(model.v_map(unit(n, a), unit(n, b))) for a in range(n) for b in range(a, n))
    return bracket, v_zero


def is_special(model: ReductiveModel) -> bool:
    bracket, v_zero = special_tests(model)
    if bracket != v_zero:
        raise InconsistencyError("[p,p]_Z = 0 and V = 0 disagree")
    return bracket


def positivity_check(model: ReductiveModel, ricci: Matrix | None = None) -> PositivityCertificate:
    """Ric(T,T) split as 1/2 sum λ_k^2 plus 1/4 sum_jk <T,[W_k,W_j]_Z>^2."""
    model._require_heisenberg()
    z, t = model.z_index, model.t_index
    lam_term = sum((l * l for l in model.lam), mpq(0)) / 2
    tz = model.metric.matrix[t, z]
    W = _orthogonal_p_basis(model)
    br = mpq(0)
    for w, nw in W:
        for v, nv in W:
            br += (tz * model.bracket_m(v, w)[z]) ** 2 / (4 * nw * nv)
    ric = nomizu_ricci(model) if ricci is None else ricci
    cert = PositivityCertificate(lam_term, br, ric[t, t])
    if not lam_term > 0:
        raise InconsistencyError("λ term must be positive")
    return cert


def ricci_specialized(model: ReductiveModel, *, u_cross=1, n_isotropy: bool = True) -> CurvatureReport:
    oracle = nomizu_ricci(model)
    formula = ricci_specialized_matrix(model, u_cross=u_cross, n_isotropy=n_isotropy)
    diff = oracle - formula
    disc = max((abs(x) for row in diff for x in row), default=mpq(0))
    return CurvatureReport(oracle, formula, disc, is_special(model), positivity_check(model, oracle))
