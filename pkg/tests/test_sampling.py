import random

from homspace.lie import verify_jacobi
from homspace.sampling import cocycle_space, random_heisenberg_model, random_p_algebra, random_pd
from homspace.zoo import make_aff, make_heisenberg, make_so3


def is_cocycle(p, b):
    n = p.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total = 0
                for a, c, e in ((i, j, k), (j, k, i), (k, i, j)):
                    total += sum(v * b[m, e] for m, v in enumerate(p.structure[a][c]))
                if total:
                    return False
    return True


def test_cocycle_dimensions():
    # 2-cocycles: aff has the one skew form, so(3) has H^2 = 0 but all coboundaries b([x,y])
    assert len(cocycle_space(make_aff())) == 1
    assert len(cocycle_space(make_so3())) == 3
    assert len(cocycle_space(make_heisenberg(1))) == 3


def test_cocycles_satisfy_condition():
    rng = random.Random(0)
    for dim in range(2, 6):
        p = random_p_algebra(rng, dim)
        for b in cocycle_space(p):
            assert b == -b.T and is_cocycle(p, b)


def test_random_models_are_valid():
    rng = random.Random(1)
    for _ in range(10):
        m = random_heisenberg_model(rng)
        assert verify_jacobi(m.g).residual == 0


def test_random_pd():
    rng = random.Random(2)
    for n in range(1, 5):
        assert random_pd(rng, n).det() > 0
