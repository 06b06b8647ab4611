import io as stdio
import json
import subprocess
import sys

import pytest

from extlift.cli import main

Z2 = {"cyclic": 2}


def run(tmp_path, command, doc=None, *extra):
    argv = [command, *extra]
    if doc is not None:
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(doc))
        argv += ["--input", str(path)]
    out, err = stdio.StringIO(), stdio.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def nonsplit_z4():
    return {"schema": 1, "group": Z2, "module": {"kind": "finite", "factors": [2]},
            "cocycle": [{"args": [1, 1], "value": [1]}]}


def test_cohomology(tmp_path):
    code, out, err = run(tmp_path, "cohomology", {"schema": 1, "group": Z2, "module": {"kind": "finite", "factors": [2]}})
    assert code == 0
    doc = json.loads(out)
    assert doc["invariant_factors"] == [2] and doc["bound_ok"]
    assert "H^2 = Z/2" in err


def test_complement_nonsplit(tmp_path):
    code, out, _ = run(tmp_path, "complement", nonsplit_z4())
    assert code == 0
    doc = json.loads(out)
    assert doc["extension"] == {"carrier_order": 4, "class_order": 2, "split": False}
    assert doc["F_order"] == 4 and doc["defect_factors"] == [2]


def test_complement_divisible(tmp_path):
    doc = {"schema": 1, "group": Z2, "module": {"kind": "divisible", "rank": 1, "exponent": 2},
           "cocycle": [{"args": [1, 1], "value": [1]}]}
    code, out, _ = run(tmp_path, "complement", doc)
    assert code == 0
    rep = json.loads(out)
    assert rep["n"] == 2 and rep["F_order"] == 4 and rep["extension"]["carrier_order"] == 8


def test_complement_split_coprime(tmp_path):
    doc = {"schema": 1, "group": Z2, "module": {"kind": "finite", "factors": [3], "action": {"1": [[2]]}},
           "cocycle": []}
    code, out, _ = run(tmp_path, "complement", doc)
    assert code == 0 and json.loads(out)["F_order"] == 2


def test_lattice_split(tmp_path):
    doc = {"schema": 1, "group": Z2,
           "source": {"rank": 2, "action": {"1": [[0, 1], [1, 0]]}},
           "target": {"rank": 1}, "matrix": [[1, 1]]}
    code, out, _ = run(tmp_path, "lattice-split", doc)
    rep = json.loads(out)
    assert code == 0 and rep["denominator"] == 2 and rep["index"] == 2
    assert rep["lattice"] == [[1], [1]] and all(rep["verification"].values())


def test_verify(tmp_path):
    doc = {"schema": 1, "group": {"product": [Z2, Z2]}, "module": {"kind": "finite", "factors": [2]}, "F": [0, 2]}
    # carrier index is m*|Q| + x, so [0, 2] is a section over one Z/2 factor only
    code, out, _ = run(tmp_path, "verify", doc)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] is False
    doc["F"] = [0, 1, 2, 3]
    rep = json.loads(run(tmp_path, "verify", doc)[1])
    assert rep["verdict"] is True and rep["defect_factors"] == []
    doc["F"] = [0, 4]
    rep = json.loads(run(tmp_path, "verify", doc)[1])
    assert rep["subgroup"] is True and rep["verdict"] is False


def test_verify_nonsubgroup(tmp_path):
    doc = nonsplit_z4()
    doc["F"] = [0, 1]
    code, out, _ = run(tmp_path, "verify", doc)
    rep = json.loads(out)
    assert code == 0 and rep["subgroup"] is False and rep["verdict"] is False


@pytest.mark.parametrize("command,doc,code", [
    ("cohomology", {"group": Z2, "module": {"kind": "finite", "factors": [2]}}, 2),
    ("cohomology", {"schema": 1, "group": Z2, "module": {"kind": "finite", "factors": [2], "action": {"1": [[1, 1]]}}}, 2),
    ("complement", {"schema": 1, "group": Z2, "module": {"kind": "fp", "p": 2, "rank": 2, "action": {"1": [[0, 1], [1, 0]]}},
                    "cocycle": [{"args": [1, 1], "value": [1, 0]}]}, 3),
    ("lattice-split", {"schema": 1, "group": Z2, "source": {"rank": 1}, "target": {"rank": 1}, "matrix": [[2]]}, 4),
    ("lattice-split", {"schema": 1, "group": Z2, "source": {"rank": 2, "action": {"1": [[0, 1], [1, 0]]}},
                       "target": {"rank": 1}, "matrix": [[1, 0]]}, 2),
])
def test_exit_codes(tmp_path, command, doc, code):
    assert run(tmp_path, command, doc)[0] == code


def test_missing_input_and_bad_json(tmp_path):
    assert run(tmp_path, "cohomology")[0] == 2
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["cohomology", "--input", str(path)], stdio.StringIO(), stdio.StringIO()) == 2
    assert main(["cohomology", "--input", str(tmp_path / "missing.json")], stdio.StringIO(), stdio.StringIO()) == 2


def test_oracle_mismatch_exit(tmp_path, monkeypatch):
    from extlift import zoo
    from extlift.exceptions import OracleMismatch

    def broken(*args, **kwargs):
        raise OracleMismatch("forced")

    monkeypatch.setattr(zoo, "sweep", broken)
    assert run(tmp_path, "zoo", None, "--caps", '{"max_q": 2, "max_m": 2}')[0] == 5


def test_zoo_is_deterministic(tmp_path):
    a = run(tmp_path, "zoo", None, "--caps", '{"max_q": 3, "max_m": 3}', "--seed", "7")
    b = run(tmp_path, "zoo", None, "--caps", '{"max_q": 3, "max_m": 3}', "--seed", "7")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["summary"]["instances"] > 0


def test_zoo_rejects_big_caps(tmp_path):
    assert run(tmp_path, "zoo", None, "--caps", '{"max_q": 16}')[0] == 2
    assert run(tmp_path, "zoo", None, "--caps", "{oops")[0] == 2


def test_text_format(tmp_path):
    code, out, _ = run(tmp_path, "complement", nonsplit_z4(), "--format", "text")
    assert code == 0 and out.startswith("|E| = 4")


def test_module_entry_point(tmp_path):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(nonsplit_z4()))
    proc = subprocess.run([sys.executable, "-m", "extlift", "cohomology", "--input", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["invariant_factors"] == [2]


def test_remaining_examples(tmp_path):
    doc = {"schema": 1, "group": {"cyclic": 1}, "module": {"kind": "finite", "factors": [6]}}
    assert json.loads(run(tmp_path, "cohomology", doc)[1])["invariant_factors"] == []

    split = {"schema": 1, "group": {"cyclic": 3}, "module": {"kind": "finite", "factors": [3]}}
    rep = json.loads(run(tmp_path, "complement", split)[1])
    assert rep["F_order"] == 3 and rep["defect_factors"] == []

    ident = {"schema": 1, "group": Z2, "source": {"rank": 2, "action": {"1": [[0, 1], [1, 0]]}},
             "target": {"rank": 2, "action": {"1": [[0, 1], [1, 0]]}}, "matrix": [[1, 0], [0, 1]]}
    assert json.loads(run(tmp_path, "lattice-split", ident)[1])["denominator"] == 1

    whole = nonsplit_z4()
    whole["F"] = [0, 1, 2, 3]
    assert json.loads(run(tmp_path, "verify", whole)[1])["verdict"] is True


def test_zoo_example(tmp_path):
    rep = json.loads(run(tmp_path, "zoo", None, "--caps", '{"max_q": 2, "max_m": 2}')[1])
    assert rep["summary"]["nontrivial_by_stratum"] == {"trivial": 1, "nontrivial": 0}
    rep = json.loads(run(tmp_path, "zoo", None, "--caps", '{"max_q": 4, "max_m": 4, "coprime": true}')[1])
    assert rep["summary"]["nontrivial_classes"] == 0
