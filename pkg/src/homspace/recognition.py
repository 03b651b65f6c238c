"""Identify an algebra given in an arbitrary basis and find a canonical basis.

The canonical map of a result is a LinearMap from the zoo model into the
input algebra: its columns are the canonical basis vectors written in the
input coordinates, so ``change_basis(g, result.canonical_map.matrix)``
reproduces the zoo model.
"""

from __future__ import annotations

import itertools
from math import isqrt
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import factorint, isprime, pollard_rho, sqrt_mod
from sympy.solvers.diophantine.diophantine import sum_of_four_squares
from gmpy2 import mpq

from .errors import NotHeisenbergError, NotTwistedHeisenbergError
from .lie import LieAlgebra, LinearMap, direct_sum
from .linalg import (
    Matrix,
    Subspace,
    congruence_diagonalize,
    is_rational_square,
    rational_sqrt,
    skew_spectrum,
    solve,
    solve_vector,
    unit,
)
from .zoo import (
    CanonicalBasis,
    lambda_canonicalize,
    make_abelian,
    make_aff,
    make_heisenberg,
    make_sl2,
    make_twisted_heisenberg,
)


@dataclass
class RecognitionResult:
    kind: str
    params: tuple = ()
    canonical_map: LinearMap | None = None
    residual: object = None
    factors: tuple["RecognitionResult", ...] = ()
    notes: dict = field(default_factory=dict)

    @property
    def type_tag(self) -> str:
        if self.kind == "direct_sum":
            return "direct_sum(" + ",".join(f.type_tag for f in self.factors) + ")"
        if self.kind in ("heisenberg", "twisted_heisenberg", "abelian", "compact_semisimple"):
            return f"{self.kind}(" + ",".join(str(p) for p in self.params) + ")"
        return self.kind

    @property
    def exact(self) -> bool:
        return self.canonical_map is not None and self.residual == 0

    def to_json(self) -> dict:
        from .linalg import rat_str

        out = {"type_tag": self.type_tag, "kind": self.kind, "params": [str(p) for p in self.params]}
        if self.canonical_map is not None:
            out["canonical_map"] = [[rat_str(x) for x in r] for r in self.canonical_map.matrix]
        else:
            out["canonical_map"] = None
        out["residual"] = None if self.residual is None else (
            rat_str(self.residual) if not isinstance(self.residual, float) else self.residual
        )
        if self.factors:
            out["factors"] = [f.to_json() for f in self.factors]
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass(frozen=True)
class Frame:
    """A canonical basis inside an algebra: roles plus their coordinate columns."""

    basis: CanonicalBasis
    matrix: Matrix

    def vector(self, role: str) -> tuple:
        return self.matrix.column(self.basis.index(role))


def invariants(g: LieAlgebra) -> dict:
    return {
        "dim": g.dim,
        "center_dim": g.center().dim,
        "derived_dim": g.derived().dim,
        "killing_signature": tuple(g.killing_form().signature),
        "nilpotency_class": g.nilpotency_class(),
    }


# ---------------------------------------------------------------------------
# helpers


def _with_map(kind: str, params: tuple, model: LieAlgebra, g: LieAlgebra, p: Matrix | None, **notes):
    if p is None:
        return RecognitionResult(kind, params, None, None, notes=notes)
    lm = LinearMap(model, g, p)
    return RecognitionResult(kind, params, lm, lm.bracket_residual(), notes=notes)


def _sub_algebra(g: LieAlgebra, sub: Subspace) -> LieAlgebra:
    return g.restrict(sub, labels=[f"u{i}" for i in range(sub.dim)])


def _lift(sub: Subspace, p: Matrix) -> Matrix:
    """Columns given in sub's coordinates, rewritten in the ambient ones."""
    return sub.basis @ p


def _complement_within(big: Subspace, small: Subspace) -> Subspace:
    vecs = small.vectors()
    extra = []
    for v in big.vectors():
        if Matrix.from_columns(vecs + extra + [v]).rank() > len(vecs) + len(extra):
            extra.append(v)
    return Subspace(big.ambient_dim, extra)


def _coords_mod(vec, basis_with_z: Matrix) -> tuple:
    return solve_vector(basis_with_z, vec)


# ---------------------------------------------------------------------------
# Heisenberg


def darboux_basis(g: LieAlgebra) -> Frame:
    """Symplectic Gram–Schmidt for ω(x,y) = Z-coefficient of [x,y].

    Requires a one-dimensional center equal to the derived algebra.
    """
    c, dsub = g.center(), g.derived()
    if c.dim != 1 or not dsub == c or g.dim % 2 == 0:
        raise NotHeisenbergError("center and derived algebra must be the same line, dim odd")
    z = c.vectors()[0]
    piv = next(i for i, x in enumerate(z) if x)

    def omega(x, y):
        return g.bracket(x, y)[piv] / z[piv]

    rest = c.complement().vectors()
    pairs = []
    while rest:
        x = rest[0]
        j = next((j for j in range(1, len(rest)) if omega(x, rest[j]) != 0), None)
        if j is None:
            raise NotHeisenbergError("ω is degenerate")
        w = omega(x, rest[j])
        y = tuple(v / w for v in rest[j])
        pairs.append((x, y))
        nxt = []
        for k, v in enumerate(rest):
            if k in (0, j):
                continue
            a, b = omega(v, y), omega(v, x)
            nxt.append(tuple(vi - a * xi + b * yi for vi, xi, yi in zip(v, x, y)))
        rest = nxt
    d = len(pairs)
    roles = ("Z",) + tuple(r for k in range(1, d + 1) for r in (f"X{k}", f"Y{k}"))
    cols = [z] + [v for pr in pairs for v in pr]
    return Frame(CanonicalBasis("heisenberg", roles, (d,)), Matrix.from_columns(cols))


# ---------------------------------------------------------------------------
# twisted Heisenberg


def _twisted_setup(g: LieAlgebra, t: Sequence | None = None):
    c, dsub = g.center(), g.derived()
    n = g.dim
    if n % 2 or n < 4 or c.dim != 1 or dsub.dim != n - 1 or not c <= dsub:
        raise NotTwistedHeisenbergError("shape does not match a twisted Heisenberg algebra")
    if t is None:
        t = next(unit(n, i) for i in range(n) if not dsub.contains(unit(n, i)))
    elif dsub.contains(t):
        raise NotTwistedHeisenbergError("t must lie outside the nilradical")
    z = c.vectors()[0]
    v0 = _complement_within(dsub, c).vectors()
    basis = Matrix.from_columns([z] + v0)
    cols = []
    for v in v0:
        co = _coords_mod(g.bracket(t, v), basis)
        if co is None:
            raise NotTwistedHeisenbergError("ad_t does not preserve the derived algebra")
        cols.append(co[1:])
    return tuple(t), z, v0, Matrix.from_columns(cols)


def _ratios(spectrum, tol: float):
    """Positive frequencies paired as ±iω; returns them sorted, or raises."""
    if any(abs(re) > 0 for re, _ in spectrum):
        raise NotTwistedHeisenbergError("ad_t has eigenvalues off the imaginary axis")
    pos = sorted(im for _, im in spectrum if im > 0)
    neg = sorted(-im for _, im in spectrum if im < 0)
    if len(pos) != len(neg) or len(pos) * 2 != len(spectrum):
        raise NotTwistedHeisenbergError("ad_t spectrum is not paired")
    scale = max(pos)
    for a, b in zip(pos, neg):
        if abs(a - b) > max(tol, 1e-7) * scale:
            raise NotTwistedHeisenbergError("ad_t spectrum is not paired")
    return pos


def _rationalize_ratios(pos: list[float], tol: float) -> tuple[list[Fraction], float]:
    base = pos[0]
    out, worst = [], 0.0
    for w in pos:
        r = w / base
        f = Fraction(r).limit_denominator(10**6)
        err = abs(r - float(f))
        worst = max(worst, err)
        if err > max(tol, 1e-12) * max(1.0, r):
            raise NotTwistedHeisenbergError(f"frequency ratio {r!r} is not rational within tolerance")
        out.append(f)
    return out, worst


def extract_lambda(g: LieAlgebra, tol: float = 1e-9, t: Sequence | None = None) -> tuple[int, ...]:
    """λ (canonical representative) from the spectrum of ad_t on D/Z."""
    return _extract(g, tol, t)[0]


def _extract(g, tol, t=None):
    t, z, v0, J0 = _twisted_setup(g, t)
    pos = _ratios(skew_spectrum(J0, tol), tol)
    ratios, err = _rationalize_ratios(pos, tol)
    return lambda_canonicalize([mpq(f.numerator, f.denominator) for f in ratios]), (t, z, v0, J0, err)


def _small_combinations(vectors: list[tuple], bound: int = 3):
    """Nonzero integer combinations of ``vectors``, smallest L1 norm first."""
    k, n = len(vectors), len(vectors[0])

    def with_norm(total, slots):
        # coefficient tuples over ``slots`` entries with |c|_1 == total
        if slots == 0:
            if total == 0:
                yield ()
            return
        for c in range(-min(total, bound), min(total, bound) + 1):
            for tail in with_norm(total - abs(c), slots - 1):
                yield (c,) + tail

    for total in range(1, bound * k + 1):
        for c in with_norm(total, k):
            yield tuple(sum((ci * v[i] for ci, v in zip(c, vectors) if ci), mpq(0)) for i in range(n))


class _NoExactBasis(Exception):
    pass


_SMALL_RATIONALS = sorted(
    {mpq(a, b) for a in range(1, 7) for b in range(1, 5)}, key=lambda c: (c.numerator + c.denominator, c)
)


def _factor(n: int, effort: int = 1000) -> dict[int, int] | None:
    """Prime factorization with bounded effort; None when it gives up."""
    f = factorint(n, limit=10**4, use_rho=False, use_pm1=False, use_ecm=False)
    out: dict[int, int] = {}
    stack = list(f.items())
    while stack:
        p, e = stack.pop()
        if p < 10**8 or isprime(p):
            out[p] = out.get(p, 0) + e
            continue
        d = pollard_rho(p, retries=1, max_steps=effort)
        if not d:
            return None
        stack += [(d, e), (p // d, e)]
    return out


def _gauss_mul(x, y):
    return x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def _prime_two_squares(p: int) -> tuple[int, int]:
    # p = 1 mod 4: Euclid on (p, sqrt(-1) mod p) until the remainder drops below sqrt(p)
    a, b = p, sqrt_mod(p - 1, p)
    while b * b > p:
        a, b = b, a % b
    return b, isqrt(p - b * b)


def _int_two_squares(n: int) -> tuple[int, int] | None:
    f = _factor(n)
    if f is None or any(e % 2 for p, e in f.items() if p % 4 == 3):
        return None
    acc = (1, 0)
    for p, e in f.items():
        if p % 4 == 3:
            base = (p ** (e // 2), 0)
            e = 1
        elif p == 2:
            base = (1, 1)
        else:
            base = _prime_two_squares(p)
        for _ in range(e):
            acc = _gauss_mul(acc, base)
    return abs(acc[0]), abs(acc[1])


def _two_squares(r: mpq):
    """(a, b) rational with a^2 + b^2 = r, or None if none is found cheaply."""
    if r <= 0:
        return None
    p, q = int(r.numerator), int(r.denominator)
    ab = _int_two_squares(p * q)  # x^2 + y^2 = pq, divide by q
    return None if ab is None else (mpq(ab[0], q), mpq(ab[1], q))


def _is_norm(r: mpq) -> bool:
    return _two_squares(r) is not None


def _twisted_canonical(g: LieAlgebra, lam: tuple[int, ...], t, z) -> Matrix:
    """Exact canonical basis (T, Z, X1, Y1, ...); raises _NoExactBasis if the search fails."""
    n = g.dim
    dsub = g.derived()
    ad_t = g.ad_matrix(t)
    # a^2 from the trace of ad_t^2 on D/Z; ad_t kills Z and t
    tr = (ad_t @ ad_t)
    trace = sum((tr[i, i] for i in range(n)), mpq(0))
    a2 = -trace / (2 * sum(l * l for l in lam))
    if a2 <= 0 or not is_rational_square(a2):
        raise _NoExactBasis("ad_t^2 trace gives no rational frequency scale")
    a = rational_sqrt(a2)
    T = tuple(x / a for x in t)
    adT = g.ad_matrix(T)
    image = Subspace(n, [adT @ v for v in dsub.vectors()])
    if image.dim != n - 2 or image.contains(z):
        raise _NoExactBasis("image of ad_T is not a complement of Z")
    piv = next(i for i, x in enumerate(z) if x)

    def omega(x, y):
        return g.bracket(x, y)[piv] / z[piv]

    def J(x):
        return adT @ x

    def gform(x, y):
        return omega(x, J(y))

    def project_out(vectors, X, Y):
        gX, gY = gform(X, X), gform(Y, Y)
        out = []
        for v in vectors:
            w = tuple(vi - gform(v, X) / gX * xi - gform(v, Y) / gY * yi for vi, xi, yi in zip(v, X, Y))
            if any(w):
                out.append(w)
        return Subspace(n, out).vectors() if out else []

    spaces = {}
    for lk in sorted(set(lam)):
        # eigenspace of J^2 = -lk^2 inside the image
        m = adT @ adT + Matrix.identity(n).scale(lk * lk)
        null = Subspace(n, m.nullspace()).intersect(image)
        if null.dim != 2 * lam.count(lk):
            raise _NoExactBasis("eigenspace has the wrong dimension")
        spaces[lk] = null.vectors()

    # g(x, y) = ω(x, Jy) is a Hermitian form over Q(i) on each block, and all
    # blocks must come out as λ²ρ times the unit form.  The class of ρ modulo
    # sums of two squares is the determinant of any odd-multiplicity block.
    rho = None
    for lk, vecs in spaces.items():
        if lam.count(lk) % 2:
            rho, rest = mpq(1), vecs
            while rest:
                x = rest[0]
                rho *= gform(x, x) / (lk * lk)
                rest = project_out(rest, x, tuple(v / lk for v in J(x)))
            break
    if rho is None:
        first = spaces[lam[0]][0]
        rho = mpq(1) if gform(first, first) > 0 else mpq(-1)

    def scaled(ab, x, lk):
        # (a + b J/λ) x: multiplies the Hermitian norm by a² + b²
        ca, cb = ab
        return tuple(ca * u + cb * v / lk for u, v in zip(x, J(x)))

    def orthogonal(vectors, lk):
        out, rest = [], vectors
        while rest:
            x = rest[0]
            out.append((x, gform(x, x)))
            rest = project_out(rest, x, tuple(v / lk for v in J(x)))
        return out

    def find_vector(rest, lk, target):
        """A vector of the block with g(x, x) = target exactly."""
        ys = orthogonal(rest, lk)
        for y, ny in ys:
            ab = _two_squares(target / ny)
            if ab is not None:
                return scaled(ab, y, lk)
        # two orthogonal vectors whose norms differ by a sum of two squares:
        # equalize them, then Lagrange's four squares hits any positive ratio.
        # In rank >= 3 such a pair exists after mixing two of the vectors.
        def pairs():
            for i, (y1, n1) in enumerate(ys):
                for y2, n2 in ys[i + 1 :]:
                    yield y1, n1, y2, n2
            for (y1, n1), (y2, n2), (y3, n3) in itertools.permutations(ys, 3):
                for c in _SMALL_RATIONALS:
                    yield tuple(a + c * b for a, b in zip(y1, y2)), n1 + c * c * n2, y3, n3

        r_ok = lambda n: target / n > 0
        for y1, n1, y2, n2 in pairs():
            if not r_ok(n1) or not _is_norm(n1 / n2):
                continue
            y2 = scaled(_two_squares(n1 / n2), y2, lk)
            r = target / n1
            p, q = int(r.numerator), int(r.denominator)
            a1, b1, a2, b2 = (mpq(int(c), q) for c in sum_of_four_squares(p * q))
            u, v = scaled((a1, b1), y1, lk), scaled((a2, b2), y2, lk)
            return tuple(x + y for x, y in zip(u, v))
        for x in itertools.islice(_small_combinations(rest), 60):
            gx = gform(x, x)
            ab = _two_squares(target / gx) if gx else None
            if ab is not None:
                return scaled(ab, x, lk)
        raise _NoExactBasis(f"no representable norm in a rank {len(ys)} block")

    blocks = []
    for lk, rest in spaces.items():
        for _ in range(lam.count(lk)):
            X = find_vector(rest, lk, lk * lk * rho)
            Y = tuple(v / lk for v in J(X))
            blocks.append((lk, X, Y))
            rest = project_out(rest, X, Y)
    Z = tuple(rho * x for x in z)
    cols = [T, Z] + [v for _, X, Y in blocks for v in (X, Y)]
    return Matrix.from_columns(cols)


def _recognize_twisted(g: LieAlgebra, tol: float) -> RecognitionResult:
    lam, (t, z, v0, J0, err) = _extract(g, tol)
    model = make_twisted_heisenberg(lam)
    try:
        p = _twisted_canonical(g, lam, t, z)
    except _NoExactBasis as exc:
        reason = str(exc)
    else:
        res = _with_map("twisted_heisenberg", lam, model, g, p)
        if res.residual == 0:
            return res
        reason = "candidate basis failed the bracket check"
    return RecognitionResult("twisted_heisenberg", lam, None, err, notes={"path": "spectral", "reason": reason})


# ---------------------------------------------------------------------------
# sl2 and semisimple pieces


def _isotropic_vector(b: Matrix) -> tuple | None:
    from sympy import symbols
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal

    P, d = congruence_diagonalize(b)
    if any(x == 0 for x in d):
        return None
    den = 1
    for x in d:
        den = den * int(x.denominator)
    coeffs = [int(x * den) for x in d]
    X, Y, Zs = symbols("x y z", integer=True)
    sol = diop_ternary_quadratic_normal(coeffs[0] * X**2 + coeffs[1] * Y**2 + coeffs[2] * Zs**2)
    if sol is None or sol[0] is None:
        return None
    v = tuple(mpq(int(s)) for s in sol)
    return P @ v


def sl2_triple(g: LieAlgebra) -> Matrix | None:
    """Columns (e, f, h) of an sl2-triple with rational entries, if one exists."""
    e = _isotropic_vector(g.killing_matrix())
    if e is None or not any(e):
        return None
    n = g.dim
    ad_e = g.ad_matrix(e)
    img = Subspace(n, ad_e.columns())
    h0 = next((v for v in img.vectors() if not Subspace(n, [e]).contains(v)), None)
    if h0 is None:
        return None
    br = g.bracket(h0, e)
    k = next(i for i, x in enumerate(e) if x)
    gamma = br[k] / e[k]
    if gamma == 0:
        return None
    h = tuple(2 * x / gamma for x in h0)
    ad_h = g.ad_matrix(h)
    # [e, f] = h and ([h, .] + 2) f = 0
    a = Matrix(ad_e.tolist() + (ad_h + Matrix.identity(n).scale(2)).tolist())
    sol = solve(a, Matrix.from_columns([h + (mpq(0),) * n]))
    if sol is None:
        return None
    f = sol.particular.column(0)
    return Matrix.from_columns([e, f, h])


def _positive_ad_square(g: LieAlgebra, x) -> mpq | None:
    ad = g.ad_matrix(x)
    sq = ad @ ad
    ev = np.linalg.eigvals(np.array([[float(c) for c in r] for r in sq]))
    for lam in sorted({round(float(v.real), 9) for v in ev if v.real > 1e-9 and abs(v.imag) < 1e-9}, reverse=True):
        f = Fraction(lam).limit_denominator(10**6)
        q = mpq(f.numerator, f.denominator)
        if (sq - Matrix.identity(g.dim).scale(q)).rank() < g.dim:
            return q
    return None


def _recognize_semisimple(g: LieAlgebra, tol: float, depth: int) -> RecognitionResult:
    sig = g.killing_form().signature
    if sig.zero:
        return RecognitionResult("unknown", notes={"reason": "perfect but Killing degenerate"})
    if sig.is_negative_definite:
        return RecognitionResult("compact_semisimple", (g.dim,), notes={"killing_signature": tuple(sig)})
    if g.dim == 3 and tuple(sig) == (2, 1, 0):
        p = sl2_triple(g)
        if p is None:
            return RecognitionResult("sl2", notes={"path": "no rational sl2-triple"})
        return _with_map("sl2", (), make_sl2(), g, p)
    # peel off an ideal with real spectrum
    probes = [unit(g.dim, i) for i in range(g.dim)] + [tuple(mpq(k + 1) for k in range(g.dim))]
    for cand in probes:
        q = _positive_ad_square(g, cand)
        if q is None:
            continue
        sq = g.ad_matrix(cand) @ g.ad_matrix(cand)
        eplus = Subspace(g.dim, (sq - Matrix.identity(g.dim).scale(q)).nullspace())
        ideal = g.ideal_generated(eplus)
        if ideal.dim < g.dim:
            other = g.centralizer(ideal)
            if other.dim + ideal.dim == g.dim and other.intersect(ideal).dim == 0:
                return _split(g, [ideal, other], tol, depth)
    return RecognitionResult("unknown", notes={"reason": "semisimple type not handled"})


# ---------------------------------------------------------------------------
# decision tree


def _split(g: LieAlgebra, parts: list[Subspace], tol: float, depth: int) -> RecognitionResult:
    results = []
    for sub in parts:
        r = _recognize(_sub_algebra(g, sub), tol, depth + 1)
        results.append((sub, r))
    factors = []
    for sub, r in results:
        if r.kind == "direct_sum":
            # flatten, lifting maps into g
            for f in r.factors:
                factors.append((sub, f))
        else:
            factors.append((sub, r))
    # abelian factors last, merged
    nonab = [(s, f) for s, f in factors if f.kind != "abelian"]
    ab = [(s, f) for s, f in factors if f.kind == "abelian"]
    ordered = nonab + ab
    lifted = []
    for sub, f in ordered:
        if f.canonical_map is not None:
            p = _lift(sub, f.canonical_map.matrix)
            lm = LinearMap(f.canonical_map.source, g, p)
            f = RecognitionResult(f.kind, f.params, lm, lm.bracket_residual(), f.factors, f.notes)
        lifted.append(f)
    if len(lifted) == 1:
        return lifted[0]
    out = RecognitionResult("direct_sum", (), None, None, tuple(lifted))
    if all(f.canonical_map is not None for f in lifted):
        model = direct_sum([f.canonical_map.source for f in lifted])
        p = Matrix.from_columns([c for f in lifted for c in f.canonical_map.matrix.columns()])
        lm = LinearMap(model, g, p)
        out.canonical_map, out.residual = lm, lm.bracket_residual()
    else:
        res = [f.residual for f in lifted if f.residual is not None]
        out.residual = max((float(r) for r in res), default=None) if res else None
    return out


def _recognize(g: LieAlgebra, tol: float, depth: int = 0) -> RecognitionResult:
    n = g.dim
    if depth > n + 2:
        return RecognitionResult("unknown", notes={"reason": "recursion limit"})
    dsub = g.derived()
    if dsub.dim == 0:
        return _with_map("abelian", (n,), make_abelian(n), g, Matrix.identity(n))
    c = g.center()
    if not c <= dsub:
        a = _complement_within(c, c.intersect(dsub))
        w = (dsub + a).complement()
        ideal = dsub + w
        return _split(g, [ideal, a], tol, depth)
    series = g.derived_series()
    perfect = series[-1]
    if perfect.dim == n:
        return _recognize_semisimple(g, tol, depth)
    if perfect.dim > 0:
        other = g.centralizer(perfect)
        if other.dim + perfect.dim == n and other.intersect(perfect).dim == 0:
            return _split(g, [other, perfect], tol, depth)
        return RecognitionResult("unknown", notes={"reason": "perfect part has no complementary ideal"})
    # solvable
    if n == 2 and dsub.dim == 1:
        y = dsub.vectors()[0]
        x = next(unit(2, i) for i in range(2) if not dsub.contains(unit(2, i)))
        k = next(i for i, v in enumerate(y) if v)
        coef = g.bracket(x, y)[k] / y[k]
        X = tuple(v / coef for v in x)
        return _with_map("aff", (), make_aff(), g, Matrix.from_columns([X, y]))
    if c.dim == 1 and dsub == c and n % 2 == 1:
        try:
            fr = darboux_basis(g)
        except NotHeisenbergError:
            return RecognitionResult("unknown", notes={"reason": "degenerate ω"})
        d = (n - 1) // 2
        return _with_map("heisenberg", (d,), make_heisenberg(d), g, fr.matrix)
    if n % 2 == 0 and c.dim == 1 and dsub.dim == n - 1:
        nil = _sub_algebra(g, dsub)
        nc = nil.center()
        if nc.dim == 1 and nil.derived() == nc:
            try:
                return _recognize_twisted(g, tol)
            except NotTwistedHeisenbergError as exc:
                return RecognitionResult("unknown", notes={"reason": str(exc)})
    return RecognitionResult("unknown", notes={"reason": "no matching invariants"})


def recognize(g: LieAlgebra, tol: float = 1e-9) -> RecognitionResult:
    return _recognize(g, tol)
