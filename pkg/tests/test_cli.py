import json
import subprocess
import sys

import jsonschema
from pathlib import Path

import pytest

from mpstable import g2case
from mpstable.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


def test_roots(capsys):
    code, out = run(capsys, "roots", "--type", "G2")
    data = json.loads(out)
    assert code == 0 and len(data["roots"]) == 12
    jsonschema.validate(data, schema("roots.schema.json"))
    code, out = run(capsys, "roots", "--type", "A", "--rank", "1")
    assert code == 0 and len(json.loads(out)["roots"]) == 2


@pytest.mark.parametrize("argv", [["roots", "--type", "Z5"], ["roots"], ["bogus"], ["grading", "--type", "G2", "--point", "1/0,1"],
                                  ["grading", "--type", "G2"], ["g2", "delta", "--coeffs", "1,2"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_regular_orders(capsys):
    code, out = run(capsys, "regular-orders", "--type", "G2")
    assert code == 0 and json.loads(out)["orders"] == [2, 3, 6]
    jsonschema.validate(json.loads(out), schema("regular_orders.schema.json"))
    code, out = run(capsys, "regular-orders", "--type", "A1")
    assert json.loads(out)["orders"] == [2]
    assert main(["regular-orders", "--type", "E8"]) == 3


@pytest.mark.parametrize("m,qtype,verdict", [("2", "A1xA1", "stable vectors exist"), ("3", "A1xT1", "stable vectors exist"),
                                             ("4", "A1xT1", "no stable vectors"), ("6", "T2", "stable vectors exist"),
                                             ("0", "G2", "no stable vectors")])
def test_grading(capsys, m, qtype, verdict):
    code, out = run(capsys, "grading", "--type", "G2", "--rho-over", m)
    data = json.loads(out)
    assert code == 0
    assert data["quotient_type"] == qtype and data["verdict"] == verdict
    assert data["grading"]["bracket_check"]["passed"]
    jsonschema.validate(data, schema("grading.schema.json"))


def test_grading_point_bases_agree(capsys):
    _, a = run(capsys, "grading", "--type", "G2", "--rho-over", "2")
    _, b = run(capsys, "grading", "--type", "G2", "--point", "1/2,1/2")
    _, c = run(capsys, "grading", "--type", "G2", "--point", "3/2,5/2", "--basis", "coroot")
    assert a == b == c


def test_grading_conjugate_point(capsys):
    # x0 - rho/2 is affine-Weyl conjugate to x0 + rho/2
    _, out = run(capsys, "grading", "--type", "G2", "--point=-1/2,-1/2")
    assert json.loads(out)["verdict"] == "stable vectors exist"


def test_g2_delta(capsys):
    code, out = run(capsys, "g2", "delta", "--coeffs", "0,0,0,0,0,0,0,0")
    assert code == 0 and json.loads(out)["delta"] == 0
    code, out = run(capsys, "g2", "delta", "--coeffs", "1,0,0,1,0,0,1,0", "--q", "2")
    data = json.loads(out)
    assert data["delta_bar"] == data["delta"] % 2 == 1
    jsonschema.validate(data, schema("g2_delta.schema.json"))


def test_g2_identity(capsys):
    code, out = run(capsys, "g2", "identity", "--seed", "7")
    data = json.loads(out)
    assert code == 0 and data["passed"] == 100 and data["samples"] == 100
    jsonschema.validate(data, schema("g2_identity.schema.json"))


def test_g2_classify(capsys):
    code, out = run(capsys, "g2", "classify", "--q", "2", "--records")
    data = json.loads(out)
    assert code == 0 and len(data["orbits"]) == 1 and data["orbits"][0]["size"] == 36
    jsonschema.validate(data, schema("g2_classify.schema.json"))
    code, tsv = run(capsys, "g2", "classify", "--q", "2", "--records", "--format", "tsv")
    lines = tsv.splitlines()
    assert len(lines) == 257 and lines[0].split("\t")[0] == "certificate"


def test_hm(capsys):
    code, out = run(capsys, "hm", "--type", "G2", "--rho-over", "6", "--q", "7")
    data = json.loads(out)
    assert code == 0 and data["torus_case"] and data["counts"]["stable"] == 216
    jsonschema.validate(data, schema("hm.schema.json"))
    code, out = run(capsys, "hm", "--type", "G2", "--rho-over", "4", "--q", "2")
    data = json.loads(out)
    assert data["counts"] == {"certified not stable": 16}
    zero = data["records"][0]
    assert zero["vector"] == [0, 0, 0, 0] and zero["verdict"] == "certified not stable"


def test_invariant_violation_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(g2case, "disc_zw", lambda q: 3)
    assert main(["g2", "delta", "--coeffs", "1,1,1,1,1,1,1,1"]) == 4


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["g2", "classify", "--q", "2", "--records", "-o", str(a)]) == 0
    assert main(["g2", "classify", "--q", "2", "--records", "--jobs", "2", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    args = [sys.executable, "-m", "mpstable", "regular-orders", "--type", "G2"]
    first = subprocess.run(args, capture_output=True, check=True).stdout
    second = subprocess.run(args, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["orders"] == [2, 3, 6]
