import json

import pytest

from qpcalc.cli import main
from qpcalc.serialize import potential_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def two_cycle_file(tmp_path, kx="1", kxy="1", ky="1", extra=(), truncation=12):
    """x^2 + xy + y^2 shaped input on the loopless 3-vertex quiver."""
    terms = []
    if kx != "0":
        terms.append({"coeff": kx, "arrows": ["a1", "b1", "a1", "b1"]})
    if kxy != "0":
        terms.append({"coeff": kxy, "arrows": ["b1", "a1", "a2", "b2"]})
    if ky != "0":
        terms.append({"coeff": ky, "arrows": ["a2", "b2", "a2", "b2"]})
    terms.extend(extra)
    return write(tmp_path, "f.json", {
        "quiver": {"n": 3, "loopless": [1, 2, 3]},
        "truncation": truncation,
        "terms": terms,
    })


def test_jdim_exact_with_quotients(tmp_path, capsys):
    path = two_cycle_file(tmp_path)
    code, payload = run(capsys, "jdim", "--input", path,
                        "--quotient-vertex", "1", "--quotient-vertex", "3")
    assert code == 0
    assert payload["status"] == "exact"
    assert payload["dim"] == 20
    assert sum(payload["per_degree"]) == 20
    assert payload["quotients"]["1"]["dim"] == 6
    assert payload["quotients"]["3"]["dim"] == 6


def test_jdim_lower_bound_exits_two(tmp_path, capsys):
    path = two_cycle_file(tmp_path, kx="0", ky="0", truncation=10)
    code, payload = run(capsys, "jdim", "--input", path)
    assert code == 2
    assert payload["status"] == "lower_bound"


def test_monomialize_emits_kappa_and_witness(tmp_path, capsys):
    path = write(tmp_path, "g.json", {
        "quiver": {"n": 2, "loopless": []},
        "truncation": 12,
        "terms": [
            {"coeff": "1", "arrows": ["a1", "a2", "b2"]},
            {"coeff": "1", "arrows": ["b2", "a2", "a3"]},
            {"coeff": "1", "arrows": ["a1", "a1", "a1"]},
            {"coeff": "1/2", "arrows": ["a1", "a2", "b2", "a1"]},
        ],
    })
    code, payload = run(capsys, "monomialize", "--input", path, "--emit-substitution")
    assert code == 0
    assert payload["checks"] == {"soundness": True, "dim_invariant": True}
    table = {(e["i"], e["j"]): e["coeff"] for e in payload["kappa"]}
    assert table[(1, 3)] == "1"
    assert all(i in (1, 3) or j > 2 for (i, j) in table)
    assert "a1" in payload["substitution"]["arrows"]


def test_typea_check_verdicts(tmp_path, capsys):
    good = two_cycle_file(tmp_path)
    code, payload = run(capsys, "typea-check", "--input", good)
    assert code == 0
    assert payload["verdict"] == "ReducedTypeA"
    assert payload["missing"] == []

    bad = two_cycle_file(tmp_path, kxy="0")
    code, payload = run(capsys, "typea-check", "--input", bad)
    assert code == 0
    assert payload["verdict"] == "NotTypeA"
    assert 1 in payload["missing"]


def test_realize_presentation_fields(tmp_path, capsys):
    path = write(tmp_path, "k.json", {
        "n": 3,
        "kappa": [
            {"i": 1, "j": 2, "coeff": "-1/2"},
            {"i": 2, "j": 2, "coeff": "-1"},
            {"i": 3, "j": 2, "coeff": "-1/2"},
            {"i": 4, "j": 2, "coeff": "-1"},
            {"i": 5, "j": 2, "coeff": "-1/2"},
            {"i": 2, "j": 3, "coeff": "1"},
        ],
    })
    code, payload = run(capsys, "realize", "--input", path, "--anchor", "2")
    assert code == 0
    assert payload["gs"][2] == ["y"] and payload["gs"][3] == ["x"]
    assert payload["equation"].startswith("u*v =")
    assert payload["bundles"] == ["(-1,-1)", "(-1,-1)", "(-1,-1)"]
    assert payload["nccr"]["vertices"] == [0, 1, 2, 3]
    assert len(payload["nccr"]["arrows"]) == 8
    assert payload["nccr"]["loops"] == []
    assert len(payload["relations"]) == 7


def test_a3_classify_normal_form_reparses(tmp_path, capsys):
    path = two_cycle_file(tmp_path)
    code, payload = run(capsys, "a3", "classify", "--input", path,
                        "--emit-substitution")
    assert code == 0
    assert payload["family"] == 1
    assert payload["params"] == ["1"]
    assert payload["normalizer"] == {"available": True, "scale": "1"}
    assert "substitution" in payload
    reparsed = potential_from_json(payload["normal_form"])
    assert reparsed.truncation == 12 and len(reparsed.terms) == 3


def test_a3_classify_rescales_the_crossing_term(tmp_path, capsys):
    path = two_cycle_file(tmp_path, kxy="3")
    code, payload = run(capsys, "a3", "classify", "--input", path)
    assert code == 0
    assert payload["family"] == 1
    assert payload["params"] == ["1/9"]


def test_a3_flop_and_orbit(tmp_path, capsys):
    path = two_cycle_file(tmp_path)
    code, payload = run(capsys, "a3", "flop", "--input", path, "--curve", "2")
    assert code == 0
    assert payload == {"curve": 2, "offQ": False, "family": 1, "params": ["1/16"]}

    code, payload = run(capsys, "a3", "orbit", "--input", path)
    assert code == 0
    values = {tuple(m["params"]) for m in payload["orbit"]}
    assert values == {("1",), ("-3/4",), ("-1/12",), ("1/3",), ("3/16",), ("1/16",)}
    assert payload["offQ"] == 0
    assert payload["gv"] == [1, 1, 1, 1, 1, 1]


def test_a3_apq_orbit(capsys):
    code, payload = run(capsys, "a3", "apq", "--p", "2", "--q", "2", "--mu", "2")
    assert code == 0
    assert payload["mu_values"] == ["-1", "1/2", "2"]
    assert payload["lambda"] == "1/2"

    code, payload = run(capsys, "a3", "apq", "--p", "3", "--q", "2", "--mu", "1")
    assert code == 0
    assert payload["members"] == [[2, 3], [3, 2]]
    assert payload["offQ"] is True


def test_diamond_check_passes(capsys):
    code, payload = run(capsys, "diamond", "--n", "2", "--max-degree", "8",
                        "--check", "overlaps")
    assert code == 0
    assert payload["pass"] is True
    assert payload["witnesses"] == []
    assert payload["n"] == 2 and payload["D"] == 8


def test_malformed_inputs_exit_one(tmp_path, capsys):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert main(["jdim", "--input", str(empty)]) == 1
    assert "error" in capsys.readouterr().err

    blank = write(tmp_path, "blank.json", {})
    assert main(["jdim", "--input", str(blank)]) == 1
    capsys.readouterr()

    broken = write(tmp_path, "broken.json", {
        "quiver": {"n": 3, "loopless": [1, 2, 3]},
        "truncation": 12,
        "terms": [{"coeff": "1", "arrows": ["a1", "a2"]}],
    })
    assert main(["jdim", "--input", str(broken)]) == 1
    capsys.readouterr()

    assert main(["nosuch"]) == 1
    capsys.readouterr()


def test_output_bytes_are_stable(tmp_path, capsys):
    path = two_cycle_file(tmp_path)
    main(["jdim", "--input", path])
    first = capsys.readouterr().out
    main(["jdim", "--input", path])
    second = capsys.readouterr().out
    assert first == second


@pytest.mark.parametrize("degree", [2, 3])
def test_low_truncation_rejected(tmp_path, capsys, degree):
    path = two_cycle_file(tmp_path)
    assert main(["jdim", "--input", path, "--max-degree", str(degree)]) == 1
    assert "at least 4" in capsys.readouterr().err
