from math import gcd

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from homspace.errors import AlgebraTypeError, DomainError
from homspace.lie import verify_jacobi
from homspace.linalg import Subspace
from homspace.zoo import (
    clear_denominators,
    lambda_canonicalize,
    lambda_equivalent,
    make_abelian,
    make_aff,
    make_heisenberg,
    make_sl2,
    make_so3,
    make_twisted_heisenberg,
    nilradical_indices,
    parse_algebra,
    standard_lorentz_form,
)


def test_sl2():
    g = make_sl2()
    v = g.vector
    assert g.bracket(v({"e": 1}), v({"f": 1})) == v({"h": 1})
    assert g.bracket(v({"h": 1}), v({"e": 1})) == v({"e": 2})
    assert g.bracket(v({"h": 1}), v({"f": 1})) == v({"f": -2})
    assert tuple(g.killing_form().signature) == (2, 1, 0)
    assert g.center().dim == 0


def test_aff():
    g = make_aff()
    x, y = g.vector({"X": 1}), g.vector({"Y": 1})
    assert g.bracket(x, y) == y
    assert g.derived() == g.span_labels(["Y"])
    k = g.killing_matrix()
    assert Subspace(2, k.nullspace()) == g.span_labels(["Y"])


def test_so3_is_compact():
    assert tuple(make_so3().killing_form().signature) == (0, 3, 0)


def test_twisted_heisenberg_brackets():
    s = make_twisted_heisenberg([1])
    v = s.vector
    assert s.dim == 4
    assert s.bracket(v({"T": 1}), v({"Y1": 1})) == v({"X1": -1})
    s2 = make_twisted_heisenberg([1, 2])
    assert s2.bracket(s2.vector({"X2": 1}), s2.vector({"Y2": 1})) == s2.vector({"Z": 2})
    assert s2.center() == s2.span_labels(["Z"])
    assert s2.derived() == s2.span_labels(["Z", "X1", "Y1", "X2", "Y2"])


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_heisenberg_structure(d):
    h = make_heisenberg(d)
    assert h.dim == 2 * d + 1
    assert h.center() == h.derived() == h.span_labels(["Z"])
    for k in range(1, d + 1):
        for j in range(1, d + 1):
            want = h.vector({"Z": int(j == k)})
            assert h.bracket(h.vector({f"X{k}": 1}), h.vector({f"Y{j}": 1})) == want


def test_nilradical_is_heisenberg_ideal():
    s = make_twisted_heisenberg([2, 5])
    nil = Subspace.coordinate(s.dim, nilradical_indices(s))
    assert s.is_ideal(nil)
    sub = s.restrict(nil)
    assert sub.center().dim == 1 and sub.nilpotency_class() == 2


def test_domain_errors():
    with pytest.raises(DomainError):
        make_heisenberg(0)
    with pytest.raises(DomainError):
        make_twisted_heisenberg([])
    with pytest.raises(AlgebraTypeError):
        standard_lorentz_form(make_sl2())


@pytest.mark.parametrize("lam", [[1], [1, 3], [2, 2, 5], [1, 2, 3, 4]])
def test_standard_form(lam):
    s = make_twisted_heisenberg(lam)
    b = standard_lorentz_form(s)
    d = len(lam)
    assert tuple(b.signature) == (2 * d + 1, 1, 0)
    t, z = s.vector({"T": 1}), s.vector({"Z": 1})
    assert b(t, z) == 1 and b(t, t) == 0 and b(z, z) == 0


def test_lambda_examples():
    assert lambda_canonicalize((2, 4)) == (1, 2)
    assert lambda_equivalent((2, 4), (1, 2))
    assert lambda_canonicalize((3, 1, 2)) == (1, 2, 3)
    assert not lambda_equivalent((1, 2), (1, 3))
    assert not lambda_equivalent((1, 2), (1, 2, 2))


def test_rational_lambda_cleared():
    assert clear_denominators([mpq(1, 2), mpq(1, 3)]) == (3, 2)
    assert lambda_canonicalize(["1/2", "3/2"]) == (1, 3)


def brute_equivalent(a, b):
    # some ratio b_j/a_0 scales the multiset a onto b
    if len(a) != len(b):
        return False
    for y in b:
        r = mpq(y, a[0])
        if sorted(r * x for x in a) == sorted(mpq(x) for x in b):
            return True
    return False


lams = st.lists(st.integers(1, 12), min_size=1, max_size=4)


@settings(max_examples=200, deadline=None)
@given(lams, lams)
def test_lambda_equivalence_matches_brute_force(a, b):
    assert lambda_equivalent(a, b) == brute_equivalent(a, b)


@settings(max_examples=100, deadline=None)
@given(lams, st.integers(1, 9), st.randoms(use_true_random=False))
def test_canonical_form_properties(a, k, r):
    c = lambda_canonicalize(a)
    assert lambda_canonicalize(c) == c
    assert list(c) == sorted(c)
    g = 0
    for x in c:
        g = gcd(g, x)
    assert g == 1
    b = [k * x for x in a]
    r.shuffle(b)
    assert lambda_canonicalize(b) == c


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 9), min_size=1, max_size=4))
def test_twisted_heisenberg_valid(lam):
    assert verify_jacobi(make_twisted_heisenberg(lam)).residual == 0


def test_parse_algebra():
    g = parse_algebra("heL(1,2)+abelian(1)")
    assert g.dim == 7
    assert parse_algebra("sl2").name == "sl2"
    with pytest.raises(ValueError):
        parse_algebra("e8")
    assert make_abelian(3).is_abelian()
