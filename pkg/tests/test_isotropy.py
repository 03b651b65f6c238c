import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homspace.errors import ShapeError
from homspace.isotropy import (
    OperatorFamily,
    classify_invariance,
    heisenberg_family,
    invariant_closure,
    is_degenerate,
    is_invariant,
    nilradical,
)
from homspace.linalg import Matrix
from homspace.sampling import random_lambda, random_vector
from homspace.zoo import make_sl2, make_twisted_heisenberg, standard_lorentz_form


def he1():
    s = make_twisted_heisenberg([1])
    return s, heisenberg_family(s), standard_lorentz_form(s)


def test_closure_examples():
    s, fam, _ = he1()
    assert invariant_closure(fam, []).dim == 0
    x = s.vector({"X1": 1})
    assert invariant_closure(fam, [x]) == s.span_labels(["X1", "Z"])
    assert invariant_closure(fam, [s.vector({"T": 1})]) == s.full()


def test_closure_is_smallest_invariant():
    s, fam, _ = he1()
    c = invariant_closure(fam, [s.vector({"Y1": 1})])
    assert is_invariant(fam, c)
    assert c == s.span_labels(["Y1", "Z"])


def test_degeneracy_examples():
    s, _, b = he1()
    assert is_degenerate(s.span_labels(["Z"]), b)
    assert not is_degenerate(s.span_labels(["X1"]), b)
    assert not is_degenerate(s.span_labels(["T", "Z"]), b)


def test_family_shape_checked():
    with pytest.raises(ShapeError):
        OperatorFamily(2, (Matrix.identity(3),))


def test_classification_examples():
    s, fam, b = he1()
    cls = classify_invariance(fam, b, 100, witnesses=[nilradical(s)])
    assert cls.verdict == "weakly_irreducible"
    assert nilradical(s) in cls.witnesses
    trivial = OperatorFamily(2, ())
    assert classify_invariance(trivial, Matrix.identity(2), 10).verdict == "reducible_nondegenerate"
    g = make_sl2()
    assert classify_invariance(OperatorFamily.adjoint(g), g.killing_form(), 30).verdict == "irreducible"


def test_weak_and_decomposable_verdicts():
    # nilpotent Jordan block, hyperbolic form: the one invariant line is isotropic
    jordan = OperatorFamily(2, (Matrix([[0, 1], [0, 0]]),))
    hyperbolic = Matrix([[0, 1], [1, 0]])
    assert classify_invariance(jordan, hyperbolic, 10).verdict == "weakly_irreducible"
    # every line invariant and degenerate: random seeds stay in their own line
    cls = classify_invariance(OperatorFamily(2, ()), Matrix.zeros(2, 2), 10)
    assert cls.verdict == "decomposable_degenerate" and cls.stuck_seed is not None


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_heisenberg_dichotomy(seed):
    rng = random.Random(seed)
    s = make_twisted_heisenberg(random_lambda(rng, rng.randint(1, 3)))
    fam, b = heisenberg_family(s), standard_lorentz_form(s)
    z = s.vector({"Z": 1})
    nil = nilradical(s)
    for _ in range(10):
        v = random_vector(rng, s.dim)
        c = invariant_closure(fam, [v])
        if nil.contains(v):
            assert c.contains(z) and is_degenerate(c, b)
        else:
            assert c == s.full()


def test_monotone_in_budget():
    s, fam, b = he1()
    verdicts = [classify_invariance(fam, b, k, witnesses=[nilradical(s)]).verdict for k in (0, 5, 50)]
    assert verdicts == ["weakly_irreducible"] * 3


def test_classification_json():
    s, fam, b = he1()
    out = classify_invariance(fam, b, 3, witnesses=[nilradical(s)]).to_json()
    assert out["verdict"] == "weakly_irreducible" and out["probes_used"] == 3
    assert all(isinstance(x, str) for w in out["witnesses"] for v in w for x in v)
