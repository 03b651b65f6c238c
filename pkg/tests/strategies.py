"""Hypothesis strategies for rational matrices."""

from gmpy2 import mpq
from hypothesis import strategies as st

from homspace.linalg import Matrix


small_q = st.builds(lambda p, q: mpq(p, q), st.integers(-6, 6), st.integers(1, 4))


def matrices(rows, cols, elements=small_q):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


@st.composite
def square(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    return draw(matrices(n, n))


@st.composite
def symmetric(draw, min_n=1, max_n=5):
    m = draw(square(min_n, max_n))
    return m + m.T


@st.composite
def invertible(draw, n):
    m = draw(matrices(n, n, st.integers(-3, 3).map(mpq)))
    if m.det() == 0:
        m = m + Matrix.identity(n).scale(13)  # diagonal dominance of the integer part
    return m
