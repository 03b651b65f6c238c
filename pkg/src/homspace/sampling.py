"""Seeded random generators for rational test data."""

from __future__ import annotations

import random
from typing import Sequence

from gmpy2 import mpq

from .homogeneous import ReductiveModel, build_heisenberg_model
from .lie import LieAlgebra, change_basis, direct_sum
from .linalg import Matrix
from .zoo import make_abelian, make_aff, make_heisenberg, make_so3


def small_rational(rng: random.Random, bound: int = 7, nonzero: bool = False) -> mpq:
    while True:
        q = mpq(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def random_vector(rng: random.Random, n: int, bound: int = 7) -> tuple:
    while True:
        v = tuple(small_rational(rng, bound) for _ in range(n))
        if any(v):
            return v


def random_invertible(rng: random.Random, n: int, bound: int = 3) -> Matrix:
    while True:
        m = Matrix([[mpq(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def random_pd(rng: random.Random, n: int, bound: int = 2) -> Matrix:
    """A^T A + I with small integer A, so positive definite."""
    a = Matrix([[mpq(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)])
    return a.T @ a + Matrix.identity(n)


def random_lambda(rng: random.Random, d: int, top: int = 6) -> tuple[int, ...]:
    return tuple(rng.randint(1, top) for _ in range(d))


def _e2() -> LieAlgebra:
    # euclidean motions of the plane: [R, x] = y, [R, y] = -x
    return LieAlgebra.from_brackets(("R", "x", "y"), {("R", "x"): {"y": 1}, ("R", "y"): {"x": -1}}, name="e2")


_BLOCKS = {
    1: [lambda: make_abelian(1)],
    2: [make_aff],
    3: [make_so3, lambda: make_heisenberg(1), _e2],
}


def random_p_algebra(rng: random.Random, dim: int, scramble: bool = True) -> LieAlgebra:
    """Direct sum of small blocks (R, aff, so3, he1, e2) in a random basis."""
    if dim == 0:
        return make_abelian(0)
    parts, left = [], dim
    while left:
        size = rng.choice([k for k in (1, 2, 3) if k <= left])
        parts.append(rng.choice(_BLOCKS[size])())
        left -= size
    g = parts[0] if len(parts) == 1 else direct_sum(parts)
    if scramble:
        g = change_basis(g, random_invertible(rng, dim), labels=[f"W{i + 1}" for i in range(dim)])
    return g


def cocycle_space(p: LieAlgebra) -> list[Matrix]:
    """Skew forms b on p with b([x,y],z) + b([y,z],x) + b([z,x],y) = 0."""
    n = p.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    where = {pr: k for k, pr in enumerate(pairs)}

    def coeff(row, i, j, c):
        if i == j or not c:
            return
        if i < j:
            row[where[i, j]] += c
        else:
            row[where[j, i]] -= c

    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                row = [mpq(0)] * len(pairs)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, v in enumerate(p.structure[a][b]):
                        coeff(row, m, c, v)
                rows.append(row)
    if not pairs:
        return []
    null = Matrix(rows).nullspace() if rows else [tuple(mpq(int(a == b)) for b in range(len(pairs))) for a in range(len(pairs))]
    out = []
    for v in null:
        m = [[mpq(0)] * n for _ in range(n)]
        for (i, j), k in where.items():
            m[i][j], m[j][i] = v[k], -v[k]
        out.append(Matrix(m))
    return out


def random_heisenberg_model(
    rng: random.Random,
    d: int | None = None,
    p_dim: int | None = None,
    *,
    special: bool | None = None,
    zz_in_N=None,
) -> ReductiveModel:
    """A random valid he_d^λ + p model with h = 0.

    ``special`` forces the Z-cocycle to vanish (True) or to be nonzero (False);
    None leaves it to chance.
    """
    d = rng.randint(1, 3) if d is None else d
    p_dim = rng.randint(0, 4) if p_dim is None else p_dim
    lam = random_lambda(rng, d)
    for _ in range(100):
        p = random_p_algebra(rng, p_dim)
        cocycles = cocycle_space(p)
        if special is False and not cocycles:
            continue
        b = Matrix.zeros(p_dim, p_dim)
        if special is not True:
            for c in cocycles:
                b = b + c.scale(small_rational(rng, 3))
            if special is False and b.is_zero():
                b = cocycles[0]
        break
    else:
        raise RuntimeError("no p algebra with a nonzero Z-cocycle of this dimension")
    labels = [f"W{i + 1}" for i in range(p_dim)]
    br = {}
    for i in range(p_dim):
        for j in range(i + 1, p_dim):
            terms = {labels[k]: v for k, v in enumerate(p.structure[i][j]) if v}
            if b[i, j]:
                terms["Z"] = b[i, j]
            if terms:
                br[labels[i], labels[j]] = terms
    zz = mpq(rng.randint(1, 5), rng.randint(1, 3)) if zz_in_N is None else zz_in_N
    return build_heisenberg_model(lam, p_dim, br, random_pd(rng, p_dim), zz_in_N=zz)


def scramble(rng: random.Random, g: LieAlgebra) -> tuple[LieAlgebra, Matrix]:
    p = random_invertible(rng, g.dim)
    return change_basis(g, p), p


__all__: Sequence[str] = [
    "cocycle_space",
    "random_heisenberg_model",
    "random_invertible",
    "random_lambda",
    "random_p_algebra",
    "random_pd",
    "random_vector",
    "scramble",
    "small_rational",
]
