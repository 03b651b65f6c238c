import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from homspace.errors import JacobiError, ShapeError, SingularError
from homspace.lie import LieAlgebra, change_basis, direct_sum, verify_jacobi
from homspace.linalg import Matrix, Subspace, unit
from homspace.sampling import random_invertible, random_p_algebra
from homspace.zoo import (
    make_abelian,
    make_aff,
    make_heisenberg,
    make_sl2,
    make_so3,
    make_twisted_heisenberg,
)

ZOO = [
    make_sl2(),
    make_aff(),
    make_so3(),
    make_abelian(2),
    make_heisenberg(1),
    make_heisenberg(2),
    make_twisted_heisenberg([1]),
    make_twisted_heisenberg([1, 3]),
    direct_sum([make_sl2(), make_aff()]),
]


def killing_oracle(g: LieAlgebra) -> sympy.Matrix:
    # tr(ad_i ad_j) straight from the structure tensor, in sympy rationals
    n = g.dim
    c = [[[sympy.Rational(int(x.numerator), int(x.denominator)) for x in g.structure[i][j]] for j in range(n)] for i in range(n)]
    ad = [sympy.Matrix(n, n, lambda k, j: c[i][j][k]) for i in range(n)]
    return sympy.Matrix(n, n, lambda i, j: (ad[i] * ad[j]).trace())


def as_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in m])


def test_brackets_from_definitions():
    s = make_twisted_heisenberg([1])
    v = s.vector
    assert s.bracket(v({"X1": 1}), v({"Y1": 1})) == v({"Z": 1})
    g = make_sl2()
    assert g.bracket(g.vector({"e": 1}), g.vector({"f": 1})) == g.vector({"h": 1})


@pytest.mark.parametrize("g", ZOO, ids=lambda g: g.name)
def test_self_bracket_vanishes(g):
    rng = random.Random(g.dim)
    x = tuple(mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(g.dim))
    assert not any(g.bracket(x, x))


def test_bracket_shape_checked():
    with pytest.raises(ShapeError):
        make_sl2().bracket((1, 0), (0, 1, 0))


def test_ad_matrices():
    s = make_twisted_heisenberg([1])
    assert s.ad_matrix(s.vector({"Z": 1})).is_zero()
    ad_t = s.ad_matrix(s.vector({"T": 1}))
    assert ad_t @ s.vector({"X1": 1}) == s.vector({"Y1": 1})
    assert ad_t @ s.vector({"Y1": 1}) == s.vector({"X1": -1})
    g = make_sl2()
    ad_h = g.ad_matrix(g.vector({"h": 1}))
    assert ad_h @ g.vector({"e": 1}) == g.vector({"e": 2})
    assert ad_h @ g.vector({"f": 1}) == g.vector({"f": -2})


@pytest.mark.parametrize("g", ZOO, ids=lambda g: g.name)
def test_killing_against_trace_oracle(g):
    assert as_sympy(g.killing_matrix()) == killing_oracle(g)


def test_killing_values():
    k = make_sl2().killing_matrix()
    assert k == Matrix([[0, 4, 0], [4, 0, 0], [0, 0, 8]])
    a = make_aff().killing_form()
    assert a.matrix == Matrix([[1, 0], [0, 0]])
    assert tuple(a.signature) == (1, 0, 1)
    for d in (1, 2, 3):
        assert make_heisenberg(d).killing_matrix().is_zero()


@pytest.mark.parametrize("g", ZOO, ids=lambda g: g.name)
def test_killing_is_ad_invariant(g):
    b = g.killing_matrix()
    n = g.dim
    for x in range(n):
        ad = g.ad_matrix(unit(n, x))
        assert (ad.T @ b + b @ ad).is_zero()


def test_killing_transforms_by_congruence():
    rng = random.Random(5)
    for g in ZOO:
        p = random_invertible(rng, g.dim)
        assert change_basis(g, p).killing_matrix() == g.killing_matrix().congruent(p)


def test_center_and_series():
    for d in (1, 2, 3):
        h = make_heisenberg(d)
        z = h.span_labels(["Z"])
        assert h.center() == z
        assert h.lower_central_series() == [h.full(), z, Subspace.zero(h.dim)]
        assert h.nilpotency_class() == 2
    ab = make_abelian(3)
    assert ab.center() == ab.full()
    assert make_sl2().nilpotency_class() is None


@pytest.mark.parametrize("g", ZOO, ids=lambda g: g.name)
def test_center_and_derived_are_ideals(g):
    assert g.is_ideal(g.center())
    assert g.is_ideal(g.derived())


@pytest.mark.parametrize("g", [make_heisenberg(1), make_heisenberg(3), make_abelian(2)])
def test_nilpotent_killing_vanishes(g):
    assert g.is_nilpotent() and g.killing_matrix().is_zero()


def test_direct_sum():
    g = direct_sum([make_sl2(), make_abelian(1)])
    assert g.dim == 4
    assert g.center() == Subspace(4, [unit(4, 3)])
    assert verify_jacobi(direct_sum([make_sl2(), make_aff()])).residual == 0


def test_change_basis_round_trip():
    rng = random.Random(2)
    g = make_twisted_heisenberg([1, 2])
    assert change_basis(g, Matrix.identity(g.dim)).structure == g.structure
    p = random_invertible(rng, g.dim)
    back = change_basis(change_basis(g, p), p.inverse())
    assert back.structure == g.structure


def test_change_basis_singular():
    with pytest.raises(SingularError):
        change_basis(make_sl2(), Matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))


def test_tampered_heisenberg_rejected():
    h = make_heisenberg(1)
    c = [[list(col) for col in row] for row in h.structure]
    x, y, z = (h.index(k) for k in ("X1", "Y1", "Z"))
    c[x][y][z] = -c[x][y][z]  # one side only
    report = verify_jacobi(c)
    assert report.antisymmetry != 0 and not report.ok
    with pytest.raises(JacobiError):
        LieAlgebra(h.labels, c)


def test_jacobi_violation_detected():
    # [h,e] = 2e but [h,f] = -3f breaks Jacobi on (e, f, h)
    c = LieAlgebra.from_brackets(("e", "f", "h"), {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -3}}, check=False)
    rep = verify_jacobi(c)
    assert rep.antisymmetry == 0 and rep.jacobi != 0


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_random_sums_are_lie_algebras(dim, seed):
    g = random_p_algebra(random.Random(seed), dim)
    assert verify_jacobi(g).residual == 0
