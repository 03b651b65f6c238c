import json
import random

from homspace.cli import main, parse_vector, run
from homspace.lie import change_basis
from homspace.sampling import random_invertible
from homspace.serialize import algebra_to_json
from homspace.zoo import make_sl2, make_twisted_heisenberg


def checks(out):
    return {c["name"]: c for c in out["checks"]}


def test_verify_named():
    code, out = run(["verify", "heL(1,2)"])
    assert code == 0 and all(c["status"] == "pass" for c in out["checks"])
    code, out = run(["verify", "sl2"])
    assert checks(out)["killing_signature"]["detail"] == [2, 1, 0]


def test_verify_tampered(tmp_path):
    data = algebra_to_json(make_sl2())
    for b in data["brackets"]:
        if (b["i"], b["j"]) == (1, 2):  # [f, h] = 2f becomes 3f
            b["terms"][0]["c"] = "3"
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(data))
    code, out = run(["verify", str(path)])
    assert code == 1 and checks(out)["jacobi"]["status"] == "fail"


def test_malformed_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 2, "brackets": [')
    code, out = run(["verify", str(path)])
    assert code == 2 and "line" in out["detail"]
    assert run(["verify", "nonsense(3)"])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["verify", str(tmp_path / "missing.json")])[0] == 2


def test_model_presets():
    code, out = run(["model", "pure-S", "--lambda", "1"])
    assert code == 0
    cert = out["artifacts"]["curvature"]["positivity_certificate"]
    assert cert["total"] == "1/2" and out["artifacts"]["curvature"]["max_discrepancy"] == "0"
    code, out = run(["model", "nonspecial", "--lambda", "1", "--zz-in-N", "3"])
    assert code == 0 and out["artifacts"]["curvature"]["ricci"][0][0] == "1"
    assert run(["model", "special", "--lambda", "1,2"])[0] == 0


def test_model_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({
        "lambda": [1, 2], "p_dim": 2,
        "p_brackets": [{"i": 0, "j": 1, "terms": [{"k": 1, "c": "1"}, {"k": 2, "c": "-2"}]}],
        "p_metric": [["2", "1"], ["1", "3"]], "zz_in_N": "1",
    }))
    code, out = run(["model", str(path)])
    assert code == 0, out


def test_form_star():
    code, out = run(["form", "heL(1)", "--standard", "--star", "Z,X1"])
    assert code == 0 and checks(out)["star[Z,X1]"]["status"] == "pass"
    code, out = run(["form", "heL(1)", "--standard", "--star", "T,Z"])
    assert code == 1 and checks(out)["star[T,Z]"]["detail"]["witness"] == ["1", "-1", "0", "0"]
    assert "normal_form" in out["artifacts"]


def test_form_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code, out = run(["form", "sl2", str(path)])
    assert code == 1 and checks(out)["ad_invariance"]["detail"]["residual"] == "4"
    assert run(["form", "sl2"])[0] == 2


def test_isotropy():
    code, out = run(["isotropy", "heL(1)", "--probes", "100"])
    assert code == 0 and out["artifacts"]["classification"]["verdict"] == "weakly_irreducible"


def test_seed_override(monkeypatch):
    _, a = run(["isotropy", "heL(1)", "--probes", "5", "--seed", "3"])
    monkeypatch.setenv("HOMSPACE_SEED", "99")
    _, b = run(["isotropy", "heL(1)", "--probes", "5", "--seed", "3"])
    assert a["seed"] == 3 and b["seed"] == 99


def test_deterministic_reports():
    assert run(["isotropy", "heL(1,2)"]) == run(["isotropy", "heL(1,2)"])
    assert run(["verify", "sl2"])[1]["inputs_digest"] == run(["verify", "sl2"])[1]["inputs_digest"]


def test_lambda():
    code, out = run(["lambda", "2,4", "1,2"])
    assert code == 0 and out["artifacts"]["a"]["canonical"] == [1, 2]
    assert run(["lambda", "1,2", "1,3"])[0] == 1
    code, out = run(["lambda", "1/2,3/2"])
    assert out["artifacts"]["a"]["integral_input"] is False and out["artifacts"]["a"]["canonical"] == [1, 3]


def test_recognize(tmp_path):
    g = change_basis(make_twisted_heisenberg([1, 3]), random_invertible(random.Random(0), 6))
    path = tmp_path / "g.json"
    path.write_text(json.dumps(algebra_to_json(g)))
    code, out = run(["recognize", str(path)])
    assert code == 0 and out["artifacts"]["recognition"]["type_tag"] == "twisted_heisenberg(1,3)"


def test_parse_vector():
    s = make_twisted_heisenberg([1])
    assert parse_vector(s, "T - 2*Z + 1/2 X1") == (1, -2, 0.5, 0)


def test_main_prints_json(capsys):
    assert main(["lambda", "3,1,2"]) == 0
    assert json.loads(capsys.readouterr().out)["artifacts"]["a"]["canonical"] == [1, 2, 3]
