"""Constructors for the classified algebras and their canonical bases."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from gmpy2 import mpq

from .errors import AlgebraTypeError, DomainError
from .forms import SymmetricBilinearForm
from .lie import LieAlgebra, direct_sum
from .linalg import Matrix, rational


@dataclass(frozen=True)
class CanonicalBasis:
    """Role of each basis index, e.g. ("T", "Z", "X1", "Y1") for he_1^λ."""

    kind: str
    roles: tuple[str, ...]
    params: tuple = ()

    def index(self, role: str) -> int:
        return self.roles.index(role)

    def indices(self, prefix: str) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r.rstrip("0123456789") == prefix]


def make_sl2() -> LieAlgebra:
    """Basis (e, f, h) with [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    roles = ("e", "f", "h")
    g = LieAlgebra.from_brackets(
        roles,
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
        name="sl2",
        canonical=CanonicalBasis("sl2", roles),
    )
    return g


def make_aff() -> LieAlgebra:
    roles = ("X", "Y")
    return LieAlgebra.from_brackets(roles, {("X", "Y"): {"Y": 1}}, name="aff", canonical=CanonicalBasis("aff", roles))


def make_so3() -> LieAlgebra:
    roles = ("K1", "K2", "K3")
    return LieAlgebra.from_brackets(
        roles,
        {("K1", "K2"): {"K3": 1}, ("K2", "K3"): {"K1": 1}, ("K3", "K1"): {"K2": 1}},
        name="so3",
        canonical=CanonicalBasis("compact", roles),
    )


def make_abelian(n: int) -> LieAlgebra:
    if n < 0:
        raise DomainError("dimension must be nonnegative")
    roles = tuple(f"A{i + 1}" for i in range(n))
    return LieAlgebra.from_brackets(roles, {}, name=f"abelian({n})", canonical=CanonicalBasis("abelian", roles))


def _pair_roles(d: int) -> list[str]:
    return [r for k in range(1, d + 1) for r in (f"X{k}", f"Y{k}")]


def make_heisenberg(d: int) -> LieAlgebra:
    """he_d in the basis (Z, X1, Y1, ..., Xd, Yd), [X_k, Y_k] = Z."""
    if d < 1:
        raise DomainError("Heisenberg algebra needs d >= 1")
    roles = ("Z", *_pair_roles(d))
    br = {(f"X{k}", f"Y{k}"): {"Z": 1} for k in range(1, d + 1)}
    return LieAlgebra.from_brackets(roles, br, name=f"he({d})", canonical=CanonicalBasis("heisenberg", roles, (d,)))


def make_twisted_heisenberg(lam: Sequence) -> LieAlgebra:
    """he_d^λ in the basis (T, Z, X1, Y1, ...).

    [X_k,Y_k] = λ_k Z, [T,X_k] = λ_k Y_k, [T,Y_k] = -λ_k X_k.  Entries of λ
    are used as given (any nonzero rationals); canonicalize first if the
    integral representative is wanted.
    """
    lam = tuple(rational(x) for x in lam)
    if not lam:
        raise DomainError("λ must be nonempty")
    if any(x == 0 for x in lam):
        raise DomainError("λ entries must be nonzero")
    d = len(lam)
    roles = ("T", "Z", *_pair_roles(d))
    br = {}
    for k, l in enumerate(lam, start=1):
        br[f"X{k}", f"Y{k}"] = {"Z": l}
        br["T", f"X{k}"] = {f"Y{k}": l}
        br["T", f"Y{k}"] = {f"X{k}": -l}
    name = "heL(" + ",".join(_fmt(x) for x in lam) + ")"
    return LieAlgebra.from_brackets(roles, br, name=name, canonical=CanonicalBasis("twisted_heisenberg", roles, lam))


def _fmt(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def standard_lorentz_form(s: LieAlgebra) -> SymmetricBilinearForm:
    """<T,Z> = 1, <T,T> = <Z,Z> = 0, X's and Y's orthonormal and orthogonal to T, Z."""
    can = s.canonical
    if can is None or can.kind != "twisted_heisenberg":
        raise AlgebraTypeError("standard Lorentz form is defined on twisted Heisenberg algebras")
    n = s.dim
    t, z = can.index("T"), can.index("Z")
    m = [[0] * n for _ in range(n)]
    m[t][z] = m[z][t] = 1
    for i in range(n):
        if i not in (t, z):
            m[i][i] = 1
    return SymmetricBilinearForm(Matrix(m), s)


def nilradical_indices(s: LieAlgebra) -> list[int]:
    can = s.canonical
    if can is None or can.kind != "twisted_heisenberg":
        raise AlgebraTypeError("expected a twisted Heisenberg algebra")
    return [i for i in range(s.dim) if i != can.index("T")]


# ---------------------------------------------------------------------------
# λ up to positive scaling


def clear_denominators(lam: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by the lcm of its denominators."""
    fr = [Fraction(str(rational(x))) for x in lam]
    m = 1
    for f in fr:
        m = lcm(m, f.denominator)
    return tuple(int(f * m) for f in fr)


def lambda_canonicalize(lam: Sequence) -> tuple[int, ...]:
    """Sorted ascending and divided by the gcd; rational entries are cleared first."""
    if len(lam) == 0:
        raise DomainError("λ must be nonempty")
    ints = clear_denominators(lam)
    if any(x <= 0 for x in ints):
        raise DomainError("λ entries must be positive")
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(sorted(x // g for x in ints))


def lambda_equivalent(a: Sequence, b: Sequence) -> bool:
    return len(a) == len(b) and lambda_canonicalize(a) == lambda_canonicalize(b)


# ---------------------------------------------------------------------------
# names


_TERM = re.compile(r"^\s*(sl2|aff|so3|he|heL|abelian)\s*(?:\(([^)]*)\))?\s*$")


def parse_algebra(expr: str) -> LieAlgebra:
    """``"heL(1,2)+abelian(1)"`` and friends."""
    parts = [p for p in expr.split("+")]
    gs = []
    for part in parts:
        m = _TERM.match(part)
        if not m:
            raise ValueError(f"cannot parse algebra name {part!r}")
        kind, args = m.group(1), m.group(2)
        arglist = [a.strip() for a in args.split(",")] if args else []
        if kind in ("sl2", "aff", "so3"):
            if arglist:
                raise ValueError(f"{kind} takes no arguments")
            gs.append({"sl2": make_sl2, "aff": make_aff, "so3": make_so3}[kind]())
        elif kind == "he":
            if len(arglist) != 1:
                raise ValueError("he(d) takes one argument")
            gs.append(make_heisenberg(int(arglist[0])))
        elif kind == "heL":
            if not arglist:
                raise ValueError("heL needs at least one λ entry")
            gs.append(make_twisted_heisenberg([rational(a) for a in arglist]))
        else:
            if len(arglist) != 1:
                raise ValueError("abelian(n) takes one argument")
            gs.append(make_abelian(int(arglist[0])))
    return gs[0] if len(gs) == 1 else direct_sum(gs)
