"""Invariant subspaces of operator families, found by seed closure."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ShapeError
from .forms import SymmetricBilinearForm
from .lie import LieAlgebra, LinearMap
from .linalg import Matrix, Subspace, rational, unit


@dataclass(frozen=True)
class OperatorFamily:
    dim: int
    operators: tuple[Matrix, ...]

    def __post_init__(self):
        if any(op.shape != (self.dim, self.dim) for op in self.operators):
            raise ShapeError("all operators must act on the same space")

    @classmethod
    def of(cls, ops: Iterable, dim: int | None = None) -> "OperatorFamily":
        mats = tuple(op.matrix if isinstance(op, LinearMap) else op for op in ops)
        if dim is None:
            if not mats:
                raise ShapeError("dimension needed for an empty family")
            dim = mats[0].rows
        return cls(dim, mats)

    @classmethod
    def adjoint(cls, g: LieAlgebra, generators: Iterable[Sequence] | None = None) -> "OperatorFamily":
        gens = [unit(g.dim, i) for i in range(g.dim)] if generators is None else list(generators)
        return cls(g.dim, tuple(g.ad_matrix(x) for x in gens))


def invariant_closure(family: OperatorFamily, seeds: Iterable[Sequence]) -> Subspace:
    """Smallest subspace containing the seeds and stable under every operator."""
    cur = Subspace(family.dim, [tuple(rational(x) for x in s) for s in seeds])
    frontier = cur.vectors()
    while frontier:
        images = [op @ v for v in frontier for op in family.operators]
        nxt = cur + Subspace(family.dim, images)
        if nxt.dim == cur.dim:
            break
        # only the new directions need to be pushed through again
        frontier = [v for v in nxt.vectors() if not cur.contains(v)]
        cur = nxt
    return cur


def is_degenerate(sub: Subspace, form) -> bool:
    form = form if isinstance(form, SymmetricBilinearForm) else SymmetricBilinearForm(form)
    if sub.dim == 0:
        return False
    return form.restrict(sub).det() == 0


def is_invariant(family: OperatorFamily, sub: Subspace) -> bool:
    return all(sub.contains(op @ v) for op in family.operators for v in sub.vectors())


VERDICTS = ("irreducible", "weakly_irreducible", "decomposable_degenerate", "reducible_nondegenerate")


@dataclass(frozen=True)
class InvarianceClassification:
    verdict: str
    witnesses: tuple[Subspace, ...]
    probes_used: int
    nondegenerate_witness: Subspace | None = None
    stuck_seed: tuple | None = field(default=None)

    def to_json(self) -> dict:
        from .linalg import rat_str

        return {
            "verdict": self.verdict,
            "witnesses": [[[rat_str(x) for x in v] for v in w.vectors()] for w in self.witnesses],
            "probes_used": self.probes_used,
        }


def _random_seed(rng: random.Random, n: int) -> tuple:
    from gmpy2 import mpq

    while True:
        v = tuple(mpq(rng.randint(-7, 7), rng.randint(1, 7)) for _ in range(n))
        if any(v):
            return v


def classify_invariance(
    family: OperatorFamily,
    form,
    probe_budget: int = 50,
    *,
    seed: int = 0,
    witnesses: Iterable[Subspace] = (),
) -> InvarianceClassification:
    """Classify by the invariant subspaces that seed closures turn up.

    Candidates come from basis seeds, ``probe_budget`` random seeds and any
    extra ``witnesses`` that are invariant.  The search is not exhaustive:
    "irreducible" means no proper invariant subspace was found.
    """
    n = family.dim
    form = form if isinstance(form, SymmetricBilinearForm) else SymmetricBilinearForm(form)
    found: list[Subspace] = []

    def note(sub: Subspace):
        if 0 < sub.dim < n and sub not in found:
            found.append(sub)

    for w in witnesses:
        if is_invariant(family, w):
            note(w)
    for i in range(n):
        note(invariant_closure(family, [unit(n, i)]))
    rng = random.Random(seed)
    stuck = None
    for _ in range(probe_budget):
        v = _random_seed(rng, n)
        outside = not any(w.contains(v) for w in found)
        c = invariant_closure(family, [v])
        if outside and c.dim < n and stuck is None:
            stuck = v
        note(c)
    found.sort(key=lambda s: s.dim)
    nondeg = next((w for w in found if not is_degenerate(w, form)), None)
    if nondeg is not None:
        verdict = "reducible_nondegenerate"
    elif not found:
        verdict = "irreducible"
    elif stuck is None:
        verdict = "weakly_irreducible"
    else:
        verdict = "decomposable_degenerate"
    return InvarianceClassification(verdict, tuple(found), probe_budget, nondeg, stuck)


def heisenberg_family(s: LieAlgebra) -> OperatorFamily:
    """ad of the nilradical basis of a twisted Heisenberg algebra, acting on s."""
    from .zoo import nilradical_indices

    return OperatorFamily.adjoint(s, [unit(s.dim, i) for i in nilradical_indices(s)])


def nilradical(s: LieAlgebra) -> Subspace:
    from .zoo import nilradical_indices

    return Subspace.coordinate(s.dim, nilradical_indices(s))
