import json
import subprocess
import sys

import pytest

from clustermod import cli
from clustermod.modulation import Bimodule
from clustermod.numberfield import make_field_algebra
from clustermod.seeds import LaurentViolation

A2 = {"entries": [[0, 1], [-1, 0]]}
A3 = {"entries": [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]}
WORKED_EXAMPLE = {"points": ["1", "2", "3"], "symmetrizer": {"1": 1, "2": 2, "3": 1},
         "arrows": [{"from": "1", "to": "2", "d": [2, 4]}, {"from": "2", "to": "3", "d": [6, 3]},
                    {"from": "3", "to": "1", "d": [18, 18]}, {"from": "1", "to": "3", "d": [12, 12]}]}
B2_FIELDS = {"points": [{"name": "1", "minpoly": ["-1", "1"]}, {"name": "2", "minpoly": ["-2", "0", "1"]}],
             "edges": [{"from": "1", "to": "2", "valuation": [1, 2]}]}


@pytest.fixture
def run(tmp_path, capsys):
    def _run(verb, obj, *extra):
        path = tmp_path / "in.json"
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        code = cli.main([verb, "--input", str(path), *extra])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


def test_matrix_mutate(run):
    code, out, _ = run("matrix-mutate", A3, "--seq", "2")
    assert code == 0
    assert json.loads(out)["entries"] == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    code, out, _ = run("matrix-mutate", A3, "--seq", "1,1")
    assert json.loads(out)["entries"] == A3["entries"]


def test_matrix_mutate_formats(run):
    assert "->" in run("matrix-mutate", A2, "--seq", "1", "--format", "dot")[1]
    assert run("matrix-mutate", A2, "--format", "table")[0] == 0


def test_quiver_mutate_worked_example_sequence(run):
    code, out, _ = run("quiver-mutate", WORKED_EXAMPLE, "--seq", "2,2")
    assert code == 0
    arrows = {(a["from"], a["to"]): tuple(a["d"]) for a in json.loads(out)["arrows"]}
    assert arrows == {("1", "2"): (2, 4), ("2", "3"): (6, 3), ("3", "1"): (6, 6)}


def test_quiver_mutate_at_non_mutable_point(run):
    code, _, err = run("quiver-mutate", WORKED_EXAMPLE, "--seq", "1")
    assert code == 3 and json.loads(err)["error"] == "precondition"


def test_seed_explore(run):
    code, out, _ = run("seed-explore", A2)
    data = json.loads(out)
    assert code == 0 and data["summary"].startswith("complete")
    assert len(data["seeds"]) == 5
    code, out, _ = run("seed-explore", A2, "--format", "table")
    assert out.splitlines()[0] == "complete: 5 seeds, 5 variables"
    assert run("seed-explore", A2, "--format", "dot")[1].startswith("graph")


def test_seed_explore_truncated(run):
    code, out, _ = run("seed-explore", {"entries": [[0, 2], [-2, 0]]}, "--max-seeds", "20")
    assert code == 0 and not json.loads(out)["summary"].startswith("complete")


def test_seed_explore_bad_caps(run):
    assert run("seed-explore", A2, "--max-depth", "0")[0] == 3


def test_laurent_violation_exit(run, monkeypatch):
    def broken(*a, **k):
        raise LaurentViolation("division left a remainder")
    monkeypatch.setattr(cli, "explore", broken)
    code, _, err = run("seed-explore", A2)
    assert code == 5 and "internal bug" in json.loads(err)["error"]


def test_subcluster_check(run):
    obj = {"parent": A3, "sigma": [1, 2], "p": 1}
    assert json.loads(run("subcluster-check", obj)[1])["subcluster"] is True
    obj["sigma"] = [2, 1]
    assert json.loads(run("subcluster-check", obj)[1])["subcluster"] is False
    obj = {"parent": A3, "sigma": {"1": 1, "2": 2, "3": 3}, "p": 3}
    assert run("subcluster-check", obj, "--format", "table")[1] == "subcluster: true\n"


def test_mod_check_pair_and_field(run):
    K = make_field_algebra([-2, 0, 1])
    bimodule = Bimodule.field_over(K, "left").to_json()
    code, out, _ = run("mod-check", bimodule)
    data = json.loads(out)
    assert code == 0 and data["valuation"] == [2, 1] and data["central_terms"] == {"E": 2, "F": 1}
    code, out, _ = run("mod-check", {"minpoly": ["-2", "0", "1"]})
    assert json.loads(out)["traces"] == ["2", "0"]
    assert run("mod-check", {"minpoly": ["-1", "0", "1"]})[0] == 3


def test_mod_check_semi_modulated(run):
    D = {"points": ["1", "2", "3"], "degrees": {"1": 1, "2": 2, "3": 1},
         "arrows": [{"from": "1", "to": "2", "left_dim": 2}, {"from": "2", "to": "3", "left_dim": 1}]}
    code, out, _ = run("mod-check", D, "--seq", "2")
    assert code == 0
    dims = {(a["from"], a["to"]): a["left_dim"] for a in json.loads(out)["arrows"]}
    assert dims[("1", "3")] == 2


def test_preproj_dims(run):
    code, out, _ = run("preproj-dims", B2_FIELDS)
    data = json.loads(out)
    assert code == 0 and data["dims"] == [3, 4, 3, 0] and data["total"] == 10 and data["dynkin"] is True
    code, out, _ = run("preproj-dims", B2_FIELDS, "--format", "table")
    assert out.splitlines()[-1] == "total: 10"
    assert run("preproj-dims", B2_FIELDS, "--cap", "-1")[0] == 3


def test_preproj_dims_resource_exit(run):
    big = {"points": [{"name": "1", "minpoly": ["-1", "1"]}, {"name": "2", "minpoly": ["-1", "1"]}],
           "edges": [{"from": "1", "to": "2", "valuation": [9, 9]}]}
    code, _, err = run("preproj-dims", big, "--cap", "40")
    assert code == 4 and json.loads(err)["error"] == "resource"


def test_dynkin_check(run):
    assert json.loads(run("dynkin-check", B2_FIELDS)[1])["dynkin"] is True
    assert json.loads(run("dynkin-check", {"entries": [[0, 2], [-2, 0]]})[1])["dynkin"] is False
    q = {"points": ["1", "2"], "arrows": [{"from": "1", "to": "2", "d": [1, 3]}]}
    assert run("dynkin-check", q, "--format", "table")[1] == "dynkin: true\n"


@pytest.mark.parametrize("verb,bad", [
    ("matrix-mutate", "{not json"),
    ("matrix-mutate", {"entries": [[0, 1], [1, 0]]}),
    ("matrix-mutate", {"nope": 1}),
    ("quiver-mutate", {"points": ["1"], "arrows": [{"from": "1", "to": "9", "d": [1, 1]}]}),
    ("preproj-dims", {"points": [{"name": "1"}]}),
])
def test_parse_errors(run, verb, bad):
    code, _, err = run(verb, bad)
    assert code in (2, 3)
    assert "error" in json.loads(err)


def test_bad_json_and_missing_file(run, tmp_path):
    assert run("matrix-mutate", "{not json")[0] == 2
    assert cli.main(["matrix-mutate", "--input", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["bogus-verb", "--input", "x"]) == 2


def test_out_file_and_determinism(run, tmp_path):
    out_path = tmp_path / "out.json"
    assert run("seed-explore", A3, "--out", str(out_path))[0] == 0
    first = out_path.read_text()
    run("seed-explore", A3, "--out", str(out_path))
    assert out_path.read_text() == first
    assert json.loads(first)["summary"] == "complete: 14 seeds, 9 variables"


def test_module_entry_point(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(A2))
    proc = subprocess.run([sys.executable, "-m", "clustermod", "matrix-mutate", "--input", "-", "--seq", "1"],
                          input=json.dumps(A2), capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["entries"] == [[0, -1], [1, 0]]


def test_emitted_json_reparses_to_equal_values(run):
    from clustermod.exchange_matrix import ExchangeMatrix
    from clustermod.modulation import ModQuiverDims
    from clustermod.preprojective import GradedDims
    from clustermod.seeds import ExchangeGraph
    from clustermod.valued_quiver import ValuedQuiver

    out = run("matrix-mutate", A3, "--seq", "2")[1]
    assert ExchangeMatrix.from_json(json.loads(out)).to_json() == json.loads(out)
    out = run("quiver-mutate", WORKED_EXAMPLE, "--seq", "2")[1]
    assert ValuedQuiver.from_json(json.loads(out)).to_json() == json.loads(out)
    out = json.loads(run("seed-explore", A3)[1])
    summary = out.pop("summary")
    g = ExchangeGraph.from_json(out)
    assert g.to_json() == out and g.summary() == summary
    out = json.loads(run("preproj-dims", B2_FIELDS)[1])
    out.pop("dynkin")
    assert GradedDims.from_json(out).to_json() == out
    D = {"points": ["1", "2"], "degrees": {"1": 1, "2": 2}, "arrows": [{"from": "1", "to": "2", "left_dim": 2}]}
    out = run("mod-check", D, "--seq", "1")[1]
    assert ModQuiverDims.from_json(json.loads(out)).to_json() == json.loads(out)


def test_dot_is_stable(run):
    first = run("seed-explore", A2, "--format", "dot")[1]
    assert first == run("seed-explore", A2, "--format", "dot")[1]
    assert first.startswith("graph exchange {") and first.rstrip().endswith("}")
    assert first.count(" -- ") == 5
