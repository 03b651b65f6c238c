"""Command line front end: one JSON report per invocation.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from gmpy2 import mpq

from .errors import HomspaceError, JacobiError
from .forms import (
    ad_invariance_residual,
    check_condition_star,
    lorentz_normal_form,
)
from .homogeneous import (
    build_heisenberg_model,
    pure_s_model,
    ricci_specialized,
    special_tests,
)
from .isotropy import OperatorFamily, classify_invariance, heisenberg_family, nilradical
from .lie import LieAlgebra, verify_jacobi
from .linalg import Subspace, rat_str, rational
from .recognition import recognize
from .serialize import (
    SchemaError,
    algebra_to_json,
    digest,
    form_from_json,
    matrix_to_json,
    model_from_json,
    model_to_json,
    scalar,
    structure_from_json,
)
from .zoo import clear_denominators, lambda_canonicalize, lambda_equivalent, parse_algebra, standard_lorentz_form

DEFAULT_SEED = 20240917


class UsageError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


@dataclass
class Report:
    command: str
    inputs: Any
    seed: int | None = None
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool, detail: Any = None) -> bool:
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "detail": detail})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs_digest": digest(self.inputs),
            "checks": self.checks,
            "artifacts": self.artifacts,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


# ---------------------------------------------------------------------------
# input helpers


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _looks_like_file(arg: str) -> bool:
    return arg.endswith(".json") or os.path.sep in arg or Path(arg).is_file()


def _algebra_input(arg: str) -> tuple[Any, list[str], list]:
    """(raw input for the digest, labels, unchecked structure tensor)."""
    if _looks_like_file(arg):
        data = _read_json(arg)
        labels, c = structure_from_json(data)
        return data, labels, c
    try:
        g = parse_algebra(arg)
    except (ValueError, HomspaceError) as exc:
        raise UsageError(str(exc)) from None
    return arg, list(g.labels), g.structure


def load_algebra(arg: str) -> tuple[Any, LieAlgebra]:
    if not _looks_like_file(arg):
        try:
            return arg, parse_algebra(arg)
        except (ValueError, HomspaceError) as exc:
            raise UsageError(str(exc)) from None
    raw, labels, c = _algebra_input(arg)
    try:
        return raw, LieAlgebra(labels, c, name=raw.get("name") if isinstance(raw, dict) else None)
    except JacobiError as exc:
        raise UsageError(f"{arg}: not a Lie algebra ({exc})") from None


_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_vector(g: LieAlgebra, text: str) -> tuple:
    """``"T - 2*Z"`` to a coordinate vector of ``g``."""
    v = [mpq(0)] * g.dim
    pos = 0
    text = text.strip()
    if not text:
        raise UsageError("empty vector expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse vector expression {text!r}")
        sign, coeff, label = m.groups()
        if pos and not sign:
            raise UsageError(f"missing operator in {text!r}")
        if label not in g.labels:
            raise UsageError(f"unknown basis label {label!r}")
        c = rational(coeff) if coeff else mpq(1)
        v[g.index(label)] += -c if sign == "-" else c
        pos = m.end()
    return tuple(v)


def parse_subspace(g: LieAlgebra, text: str) -> Subspace:
    """Comma separated spanning vectors; the empty string is {0}."""
    vecs = [parse_vector(g, part) for part in text.split(",") if part.strip()]
    return Subspace(g.dim, vecs)


def _resolve_seed(args) -> int:
    env = os.environ.get("HOMSPACE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HOMSPACE_SEED must be an integer, got {env!r}") from None
    return args.seed


def _subspace_json(sub: Subspace) -> list:
    return [[rat_str(x) for x in v] for v in sub.vectors()]


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> Report:
    raw, labels, c = _algebra_input(args.algebra)
    rep = Report("verify", raw)
    jac = verify_jacobi(c)
    rep.check("antisymmetry", jac.antisymmetry == 0, scalar(jac.antisymmetry))
    if not rep.check("jacobi", jac.jacobi == 0, {"residual": scalar(jac.jacobi), "worst": jac.worst}):
        return rep
    g = LieAlgebra(labels, c, check=False)
    center, derived = g.center(), g.derived()
    sig = tuple(g.killing_form().signature)
    rep.check("center", True, {"dim": center.dim, "basis": _subspace_json(center)})
    rep.check("derived", True, {"dim": derived.dim, "basis": _subspace_json(derived)})
    rep.check("killing_signature", True, list(sig))
    rep.artifacts["algebra"] = algebra_to_json(g)
    rep.artifacts["killing_matrix"] = matrix_to_json(g.killing_matrix())
    rep.artifacts["nilpotency_class"] = g.nilpotency_class()
    return rep


def cmd_recognize(args) -> Report:
    raw, g = load_algebra(args.algebra)
    rep = Report("recognize", {"algebra": raw, "tol": args.tol})
    res = recognize(g, tol=args.tol)
    rep.artifacts["recognition"] = res.to_json()
    rep.check("recognized", res.kind != "unknown", res.type_tag)
    if res.canonical_map is not None:
        rep.check("canonical_map", res.residual == 0, scalar(res.residual))
    elif isinstance(res.residual, float):
        rep.check("spectral_residual", res.residual <= args.tol, res.residual)
    return rep


def cmd_form(args) -> Report:
    raw, g = load_algebra(args.algebra)
    if args.standard == (args.form is not None):
        raise UsageError("give exactly one of a form file or --standard")
    if args.standard:
        try:
            b = standard_lorentz_form(g)
        except (HomspaceError, TypeError) as exc:
            raise UsageError(str(exc)) from None
        form_raw: Any = "standard"
    else:
        form_raw = _read_json(args.form)
        b = form_from_json(form_raw, g)
        if b.dim != g.dim:
            raise UsageError(f"form is {b.dim}x{b.dim} but the algebra has dimension {g.dim}")
    rep = Report("form", {"algebra": raw, "form": form_raw, "star": args.star})
    res = ad_invariance_residual(g, b)
    rep.check("ad_invariance", not res, {"residual": scalar(res.value), "worst": res.worst})
    sig = b.signature
    rep.check("lorentzian", sig.is_lorentzian, list(sig))
    for text in args.star:
        sub = parse_subspace(g, text)
        star = check_condition_star(b, sub)
        rep.check(f"star[{text}]", star.passes, star.to_json())
    if g.canonical is not None and g.canonical.kind == "twisted_heisenberg" and not res and sig.is_lorentzian:
        try:
            nf = lorentz_normal_form(g, b)
        except HomspaceError as exc:
            rep.check("normal_form", False, str(exc))
        else:
            rep.check("normal_form", True, None)
            rep.artifacts["normal_form"] = {
                "mu": rat_str(nf.mu),
                "nu": rat_str(nf.nu),
                "exact_rational": nf.exact_rational,
                "automorphism": matrix_to_json(nf.automorphism.matrix),
            }
    rep.artifacts["form"] = {"matrix": matrix_to_json(b.matrix)}
    return rep


def _preset_model(name: str, lam, zz):
    if name == "pure-S":
        return pure_s_model(lam)
    if name == "special":
        # p = aff with [W1, W2] = W2, no Z component
        return build_heisenberg_model(lam, 2, {("W1", "W2"): {"W2": 1}}, None, zz_in_N=zz)
    if name == "nonspecial":
        return build_heisenberg_model(lam, 2, {("W1", "W2"): {"Z": 1}}, None, zz_in_N=zz)
    raise UsageError(f"unknown model preset {name!r} (pure-S, special, nonspecial)")


PRESETS = ("pure-S", "special", "nonspecial")


def cmd_model(args) -> Report:
    zz = rational(args.zz_in_N) if args.zz_in_N is not None else mpq(1)
    if args.model in PRESETS:
        lam = [rational(x) for x in (args.lam or "1").split(",")]
        model = _preset_model(args.model, lam, zz)
        raw: Any = {"preset": args.model, "lambda": [rat_str(x) for x in lam], "zz_in_N": rat_str(zz)}
    else:
        raw = _read_json(args.model)
        if not isinstance(raw, dict):
            raise SchemaError("model JSON must be an object")
        if args.zz_in_N is not None:
            raw = dict(raw, zz_in_N=rat_str(zz))
        model = model_from_json(raw)
    rep = Report("model", raw)
    rep.check("valid", True, {"s_dim": model.s_dim, "p_dim": model.p_dim, "h_dim": model.h_dim})
    cur = ricci_specialized(model)
    rep.check("ricci_oracle_vs_specialized", cur.max_discrepancy == 0, rat_str(cur.max_discrepancy))
    bracket, v_zero = special_tests(model)
    rep.check("special_tests_agree", bracket == v_zero, {"bracket_test": bracket, "v_zero": v_zero})
    cert = cur.positivity_certificate
    rep.check("positivity", cert.holds and cert.total > 0, {"ric_tt": rat_str(cert.ric_tt)})
    rep.artifacts["model"] = model_to_json(model)
    rep.artifacts["curvature"] = {
        "ricci": matrix_to_json(cur.ricci),
        "ricci_specialized": matrix_to_json(cur.ricci_specialized),
        "max_discrepancy": rat_str(cur.max_discrepancy),
        "special": cur.special,
        "positivity_certificate": {
            "lambda_term": rat_str(cert.lambda_term),
            "bracket_term": rat_str(cert.bracket_term),
            "ric_tt": rat_str(cert.ric_tt),
            "total": rat_str(cert.total),
        },
    }
    return rep


def cmd_isotropy(args) -> Report:
    raw, g = load_algebra(args.algebra)
    seed = _resolve_seed(args)
    rep = Report("isotropy", {"algebra": raw, "probes": args.probes}, seed=seed)
    twisted = g.canonical is not None and g.canonical.kind == "twisted_heisenberg"
    if twisted:
        family, form, witnesses = heisenberg_family(g), standard_lorentz_form(g), [nilradical(g)]
        rep.artifacts["family"] = "ad(nilradical)"
    else:
        family, form, witnesses = OperatorFamily.adjoint(g), g.killing_form(), []
        rep.artifacts["family"] = "ad(g)"
    cls = classify_invariance(family, form, args.probes, seed=seed, witnesses=witnesses)
    rep.artifacts["classification"] = cls.to_json()
    # a connected-group statement; disconnected isotropy groups may act with more
    rep.artifacts["scope"] = "infinitesimal: invariance under the Lie algebra action only"
    rep.check("classified", True, cls.verdict)
    if twisted:
        z = g.basis_vector(g.canonical.index("Z"))
        bad = [w for w in cls.witnesses if not w.contains(z)]
        rep.check("witnesses_contain_Z", not bad, len(cls.witnesses))
        rep.check("not_irreducible", cls.verdict != "irreducible", cls.verdict)
    return rep


def _lambda_info(lam) -> dict:
    return {
        "canonical": list(lambda_canonicalize(lam)),
        "integral_input": all(x.denominator == 1 for x in lam),
        "cleared": list(clear_denominators(lam)),
    }


def cmd_lambda(args) -> Report:
    try:
        a = [rational(x) for x in args.a.split(",")]
        b = None if args.b is None else [rational(x) for x in args.b.split(",")]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad λ list: {exc}") from None
    rep = Report("lambda", {"a": args.a, "b": args.b})
    canon = lambda_canonicalize(a)
    rep.artifacts["a"] = _lambda_info(a)
    rep.check("canonicalize", True, list(canon))
    if b is not None:
        rep.artifacts["b"] = _lambda_info(b)
        rep.check("equivalent", lambda_equivalent(a, b), None)
    return rep


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homspace", description="Exact checks for Lorentz homogeneous-space algebra")
    p.add_argument("--tol", type=float, default=1e-9, help="tolerance for spectral (floating point) steps")
    p.add_argument("--probes", type=int, default=50, help="random seeds for invariant-subspace search")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="probe seed (HOMSPACE_SEED overrides)")
    p.add_argument("--zz-in-N", dest="zz_in_N", default=None, help="<Z,Z> used in the N sub-model")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="Jacobi identity, center, derived algebra, Killing signature")
    s.add_argument("algebra", help="algebra name such as heL(1,2)+abelian(1), or a JSON file")

    s = sub.add_parser("recognize", help="identify the isomorphism type and a canonical basis")
    s.add_argument("algebra")

    s = sub.add_parser("form", help="invariance, signature and condition (*) of a bilinear form")
    s.add_argument("algebra")
    s.add_argument("form", nargs="?", help="JSON file with a 'matrix' entry")
    s.add_argument("--standard", action="store_true", help="use the standard Lorentz form")
    s.add_argument("--star", action="append", default=[], metavar="VECTORS",
                   help='subspace for condition (*), e.g. "Z,X1" or "T-Z"; repeatable')

    s = sub.add_parser("model", help="curvature cross-check of a reductive model")
    s.add_argument("model", help="model JSON file or a preset: " + ", ".join(PRESETS))
    s.add_argument("--lambda", dest="lam", default=None, help="comma separated λ for presets")

    s = sub.add_parser("isotropy", help="invariant-subspace classification")
    s.add_argument("algebra")

    s = sub.add_parser("lambda", help="canonicalize a λ list or test two for equivalence")
    s.add_argument("a", help="comma separated λ entries")
    s.add_argument("b", nargs="?", help="second list; exit 1 if not equivalent")

    # flags are also accepted after the subcommand
    for action in list(p._actions):
        if action.option_strings and action.dest != "help":
            for sp in sub.choices.values():
                sp.add_argument(*action.option_strings, dest=action.dest, type=action.type,
                                default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


COMMANDS = {
    "verify": cmd_verify,
    "recognize": cmd_recognize,
    "form": cmd_form,
    "model": cmd_model,
    "isotropy": cmd_isotropy,
    "lambda": cmd_lambda,
}


def run(argv: Sequence[str] | None = None) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 2), {"error": "usage"}
    try:
        rep = COMMANDS[args.command](args)
    except (UsageError, SchemaError, HomspaceError, ValueError, TypeError) as exc:
        return 2, {"command": args.command, "error": type(exc).__name__, "detail": str(exc)}
    return (0 if rep.passed else 1), rep.to_json()


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(argv)
    if out.get("error") != "usage":
        stream = sys.stdout if code != 2 else sys.stderr
        print(json.dumps(out, indent=2, default=str), file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
