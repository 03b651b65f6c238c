"""JSON interchange: rationals as "p/q" strings, algebras, forms and models."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from gmpy2 import mpq

from .forms import SymmetricBilinearForm
from .homogeneous import ReductiveModel, build_heisenberg_model
from .lie import LieAlgebra
from .linalg import Matrix, QuadraticNumber, rat_str, rational


class SchemaError(ValueError):
    """Input JSON does not match the expected layout."""


def scalar(x) -> Any:
    if isinstance(x, QuadraticNumber):
        return {"a": rat_str(x.a), "b": rat_str(x.b), "sqrt": rat_str(x.r)}
    if isinstance(x, float):
        return x
    return rat_str(x)


def matrix_to_json(m: Matrix) -> list:
    return [[scalar(x) for x in row] for row in m]


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("matrix must be a list of rows")
    try:
        return Matrix([[rational(x) for x in row] for row in data])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad matrix entry: {exc}") from None


def algebra_to_json(g: LieAlgebra) -> dict:
    brackets = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            terms = [{"k": k, "c": rat_str(c)} for k, c in enumerate(g.structure[i][j]) if c]
            if terms:
                brackets.append({"i": i, "j": j, "terms": terms})
    out = {"dim": g.dim, "basis": list(g.labels), "brackets": brackets}
    if g.name:
        out["name"] = g.name
    return out


def structure_from_json(data: dict) -> tuple[list[str], list]:
    """Labels and the antisymmetric completion of the listed brackets.

    Returned unchecked so that a broken tensor can still be reported on.
    """
    try:
        n = int(data["dim"])
        labels = list(data.get("basis") or [f"e{i + 1}" for i in range(n)])
        if len(labels) != n:
            raise SchemaError("basis length differs from dim")
        c = [[[mpq(0)] * n for _ in range(n)] for _ in range(n)]
        for item in data.get("brackets", []):
            i, j = int(item["i"]), int(item["j"])
            if not (0 <= i < n and 0 <= j < n):
                raise SchemaError(f"bracket index out of range: {i}, {j}")
            for t in item["terms"]:
                k = int(t["k"])
                if not 0 <= k < n:
                    raise SchemaError(f"term index out of range: {k}")
                v = rational(t["c"])
                c[i][j][k] += v
                c[j][i][k] -= v
        return labels, c
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed algebra JSON: {exc!r}") from None


def algebra_from_json(data: dict) -> LieAlgebra:
    labels, c = structure_from_json(data)
    return LieAlgebra(labels, c, name=data.get("name"))


def form_to_json(b: SymmetricBilinearForm, algebra_ref: Any = None) -> dict:
    return {"algebra": algebra_ref, "matrix": matrix_to_json(b.matrix)}


def form_from_json(data: dict, algebra: LieAlgebra | None = None) -> SymmetricBilinearForm:
    if "matrix" not in data:
        raise SchemaError("form JSON needs a matrix")
    return SymmetricBilinearForm(matrix_from_json(data["matrix"]), algebra)


def model_from_json(data: dict) -> ReductiveModel:
    try:
        lam = [rational(x) for x in data["lambda"]]
        p_dim = int(data.get("p_dim", 0))
        h_dim = int(data.get("h_dim", 0))
        metric = data.get("p_metric")
        return build_heisenberg_model(
            lam,
            p_dim,
            data.get("p_brackets", []),
            None if metric is None else matrix_from_json(metric),
            h_dim=h_dim,
            zz_in_N=rational(data.get("zz_in_N", 1)),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed model JSON: {exc!r}") from None


def model_to_json(model: ReductiveModel) -> dict:
    """Inverse of ``model_from_json`` for models built by ``build_heisenberg_model``."""
    s, p = model.s_dim, model.p_dim
    local = list(range(s, s + p)) + [model.z_index] + list(range(model.n, model.g.dim))
    pos = {g_idx: k for k, g_idx in enumerate(local)}
    brackets = []
    g = model.g
    for a, i in enumerate(local):
        for b, j in enumerate(local):
            if b <= a or model.z_index in (i, j):
                continue
            terms = [{"k": pos[k], "c": rat_str(c)} for k, c in enumerate(g.structure[i][j]) if c]
            if terms:
                brackets.append({"i": a, "j": b, "terms": terms})
    pm = model.metric.matrix.submatrix(range(s, s + p), range(s, s + p))
    out = {
        "lambda": [rat_str(x) for x in model.lam],
        "p_dim": p,
        "p_brackets": brackets,
        "p_metric": matrix_to_json(pm),
        "zz_in_N": rat_str(model.zz_in_N),
    }
    if model.h_dim:
        out["h_dim"] = model.h_dim
    return out


def digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()
