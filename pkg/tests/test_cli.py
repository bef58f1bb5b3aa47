"""End-to-end tests for the command-line interface."""

import io
import json
import sys

from planar_holant import cli
from planar_holant.algebra import AN, I
from planar_holant.grid import grid_to_json, grid_from_json
from planar_holant.sigcalc import sig, equality, transform, Z

from test_grid import k4_grid, naive_holant


def run_cli(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def write_doc(tmp_path, doc, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def self_loop_doc():
    return {
        "signatures": {"eq": ["1", "0", "1"]},
        "vertices": [{"id": 0, "sig": "eq", "rotation": ["a", "b"]}],
        "edges": [["a", "b"]],
    }


# -- eval -----------------------------------------------------------------------


def test_eval_brute_self_loop(tmp_path, capsys):
    path = write_doc(tmp_path, self_loop_doc())
    code, doc = run_cli(capsys, ["eval", "--method", "brute", path])
    assert code == 0
    assert doc == {"method": "brute", "value": "2"}


def test_eval_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(self_loop_doc())))
    code, doc = run_cli(capsys, ["eval", "-"])
    assert code == 0
    assert doc["value"] == "2"


def test_eval_auto_matches_naive(tmp_path, capsys):
    grid = k4_grid()
    path = write_doc(tmp_path, grid_to_json(grid))
    code, doc = run_cli(capsys, ["eval", path])
    assert code == 0
    assert AN(doc["value"]) == naive_holant(grid)


def test_eval_method_mismatch_is_invalid(tmp_path, capsys):
    path = write_doc(tmp_path, grid_to_json(k4_grid()))
    code, doc = run_cli(capsys, ["eval", "--method", "product", path])
    assert code == 2
    assert doc["error"] == "ClassError"


def test_eval_cap_exceeded(tmp_path, capsys):
    grid = cli.bundle_grid(sig([2, 1, 0, 0, 0]), sig([2, 1, 0, 0, 0]))
    path = write_doc(tmp_path, grid_to_json(grid))
    code, doc = run_cli(capsys, ["eval", "--cap", "2", path])
    assert code == 1
    assert doc["error"] == "TooLarge"
    code, doc = run_cli(capsys, ["eval", "--cap", "8", path])
    assert code == 0
    assert AN(doc["value"]) == naive_holant(grid)


def test_eval_honors_cap_env(tmp_path, capsys, monkeypatch):
    grid = cli.bundle_grid(sig([2, 1, 0, 0, 0]), sig([2, 1, 0, 0, 0]))
    path = write_doc(tmp_path, grid_to_json(grid))
    monkeypatch.setenv("HOLANT_CAP", "1")
    code, doc = run_cli(capsys, ["eval", "--method", "brute", path])
    assert code == 1
    assert doc["error"] == "TooLarge"


# -- gate -----------------------------------------------------------------------


def test_gate_triangle(tmp_path, capsys):
    path = write_doc(tmp_path, grid_to_json(cli.triangle_gate_grid()))
    code, doc = run_cli(capsys, ["gate", path])
    assert code == 0
    assert doc["arity"] == 3
    assert doc["symmetric"] == ["0", "1", "0", "1"]


def test_gate_tetrahedron(tmp_path, capsys):
    path = write_doc(tmp_path, grid_to_json(cli.tetrahedron_gate_grid()))
    code, doc = run_cli(capsys, ["gate", path])
    assert code == 0
    assert doc["symmetric"] == ["0", "2", "0", "1", "0"]


def test_gate_quad_round_trip(tmp_path, capsys):
    path = write_doc(tmp_path, grid_to_json(cli.quad_gate_grid(3)))
    code, doc = run_cli(capsys, ["gate", path])
    assert code == 0
    assert doc["symmetric"] == ["1", "0", "0", "0", "1"]


def test_gate_asymmetric_reports_null(tmp_path, capsys):
    doc = {
        "signatures": {"f": ["1", "2", "0", "1"]},
        "vertices": [{"id": 0, "sig": "f", "rotation": ["a", "d0", "d1"]},
                     {"id": 1, "sig": "f", "rotation": ["b", "d2", "d3"]}],
        "edges": [["a", "b"]],
        "dangling": ["d0", "d1", "d2", "d3"],
    }
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["gate", path])
    assert code == 0
    assert out["arity"] == 4 and len(out["entries"]) == 16


# -- transform ------------------------------------------------------------------


def test_transform_signature(tmp_path, capsys):
    path = write_doc(tmp_path, {"signature": ["0", "1", "0"]})
    code, doc = run_cli(capsys, ["transform", "--matrix", "1,1;i,-i", path])
    assert code == 0
    want = transform(Z, sig([0, 1, 0]))
    assert [AN(e) for e in doc["signature"]] == list(want.entries)


def test_transform_orthogonal_grid_preserves_value(tmp_path, capsys):
    grid = cli.bundle_grid(sig([1, 2, 0, 1]), sig([0, 1, 1, 3]))
    path = write_doc(tmp_path, grid_to_json(grid))
    code, doc = run_cli(capsys,
                        ["transform", "--matrix", "3/5,4/5;-4/5,3/5", path])
    assert code == 0
    assert naive_holant(grid_from_json(doc["grid"])) == naive_holant(grid)


def test_transform_bipartite_grid_preserves_value(tmp_path, capsys):
    doc = {
        "signatures": {"eq2": ["1", "0", "1"], "f": ["1", "2", "0", "1"]},
        "vertices": [
            {"id": 0, "sig": "f", "rotation": ["a0", "a1", "a2"]},
            {"id": 1, "sig": "f", "rotation": ["b2", "b1", "b0"]},
            {"id": 2, "sig": "eq2", "rotation": ["m0", "n0"]},
            {"id": 3, "sig": "eq2", "rotation": ["m1", "n1"]},
            {"id": 4, "sig": "eq2", "rotation": ["m2", "n2"]},
        ],
        "edges": [["a0", "m0"], ["n0", "b0"], ["a1", "m1"], ["n1", "b1"],
                  ["a2", "m2"], ["n2", "b2"]],
        "side": {"0": "R", "1": "R", "2": "L", "3": "L", "4": "L"},
    }
    grid = grid_from_json(doc)
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["transform", "--matrix", "1,2;1,3", path])
    assert code == 0
    assert naive_holant(grid_from_json(out["grid"])) == naive_holant(grid)


def test_transform_bad_matrix(tmp_path, capsys):
    path = write_doc(tmp_path, {"signature": ["1", "0"]})
    code, doc = run_cli(capsys, ["transform", "--matrix", "1,2,3", path])
    assert code == 2
    assert "rows" in doc["message"]


def test_transform_non_orthogonal_unsided_grid(tmp_path, capsys):
    path = write_doc(tmp_path, self_loop_doc())
    code, doc = run_cli(capsys, ["transform", "--matrix", "1,2;1,3", path])
    assert code == 2
    assert doc["error"] == "SingularTransform"


# -- classify -------------------------------------------------------------------


def test_classify_plcsp2(tmp_path, capsys):
    path = write_doc(tmp_path, {"signatures": {"f": ["1", "2", "1"]}})
    code, doc = run_cli(capsys, ["classify", "--framework", "plcsp2", path])
    assert code == 0
    assert doc["verdict"]["tractable"] is True
    assert doc["signatures"]["f"]["classes"]["Mhat"] is True
    assert doc["signatures"]["f"]["classes"]["P"] is False


def test_classify_plholant_witness_serialized(tmp_path, capsys):
    f = transform(Z, equality(5))
    g = transform(Z, sig([0, 1, 0, 0]))
    doc = {"signatures": {
        "f": [str(e) for e in f.entries],
        "g": [str(e) for e in g.entries]}}
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["classify", path])
    assert code == 0
    assert out["verdict"]["tractable"] is True
    assert "7" in out["verdict"]["case"]


def test_classify_plholant_hard(tmp_path, capsys):
    f = transform(Z, equality(4))
    g = transform(Z, sig([0, 1, 0, 0]))
    doc = {"signatures": {
        "f": [str(e) for e in f.entries],
        "g": [str(e) for e in g.entries]}}
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["classify", path])
    assert code == 0
    assert out["verdict"]["tractable"] is False


def test_classify_binary_eq(tmp_path, capsys):
    path = write_doc(tmp_path, {"f": ["1", "2", "4"], "S": [3, 6]})
    code, doc = run_cli(capsys, ["classify", "--framework", "binary-eq", path])
    assert code == 0
    assert doc["verdict"]["tractable"] is True


def test_classify_binary_eq_bad_s(tmp_path, capsys):
    path = write_doc(tmp_path, {"f": ["1", "2", "3"], "S": [2]})
    code, doc = run_cli(capsys, ["classify", "--framework", "binary-eq", path])
    assert code == 2
    assert doc["error"] == "BadS"


def test_classify_hpm_sizes(tmp_path, capsys):
    path = write_doc(tmp_path, {"sizes": [5, 10]})
    code, doc = run_cli(capsys, ["classify", "--framework", "hpm", path])
    assert code == 0
    assert doc["verdict"]["tractable"] is True
    path = write_doc(tmp_path, {"sizes": [3, 6]})
    code, doc = run_cli(capsys, ["classify", "--framework", "hpm", path])
    assert code == 0
    assert doc["verdict"]["tractable"] is False


# -- pm / hpm -------------------------------------------------------------------


def test_pm_weighted_edge(tmp_path, capsys):
    doc = {"vertices": [1, 2],
           "rotation": {"1": ["a"], "2": ["b"]},
           "edges": [["a", "b", "3"]]}
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["pm", path])
    assert code == 0
    assert out == {"value": "3"}


def hpm_doc(members):
    n = len(members)
    return {
        "vertices": members,
        "hyperedges": [{"id": "h", "members": members}],
        "rotation": dict({str(v): ["i%d" % j] for j, v in enumerate(members)},
                         h=["i%d" % j for j in range(n)]),
    }


def test_hpm_single_hyperedge(tmp_path, capsys):
    path = write_doc(tmp_path, hpm_doc([1, 2, 3, 4, 5]))
    code, doc = run_cli(capsys, ["hpm", path])
    assert code == 0
    assert doc["value"] == "1"
    assert doc["verdict"]["tractable"] is True


def test_hpm_hard_capped(tmp_path, capsys):
    path = write_doc(tmp_path, hpm_doc([1, 2, 3]))
    code, doc = run_cli(capsys, ["hpm", "--cap", "1", path])
    assert code == 1
    assert doc["value"] is None
    assert doc["verdict"]["tractable"] is False
    code, doc = run_cli(capsys, ["hpm", path])
    assert code == 0
    assert doc["value"] == "1"


# -- verify ---------------------------------------------------------------------


def test_verify_all_pass(capsys):
    code, doc = run_cli(capsys, ["verify"])
    assert code == 0
    assert doc["failed"] == 0
    assert doc["passed"] == len(cli.FIXTURES)
    assert all(f["ok"] for f in doc["fixtures"])


def test_verify_reports_failures(capsys, monkeypatch):
    broken = [("broken/always-false", lambda: False),
              ("broken/raises", lambda: 1 / 0)]
    monkeypatch.setattr(cli, "FIXTURES", broken)
    code, doc = run_cli(capsys, ["verify"])
    assert code == 1
    assert doc["failed"] == 2
    assert "ZeroDivisionError" in doc["fixtures"][1]["error"]


# -- diagnostics and determinism --------------------------------------------------


def test_invalid_json_is_exit_2(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("not json"))
    code, doc = run_cli(capsys, ["eval", "-"])
    assert code == 2
    assert doc["error"] == "JSONDecodeError"


def test_missing_file_is_exit_2(capsys):
    code, doc = run_cli(capsys, ["eval", "/nonexistent/path.json"])
    assert code == 2
    assert doc["error"] == "FileNotFoundError"


def test_unknown_signature_name_is_exit_2(tmp_path, capsys):
    doc = self_loop_doc()
    doc["vertices"][0]["sig"] = "nope"
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["eval", path])
    assert code == 2
    assert out["error"] == "StructureError"


def test_bad_flags_are_exit_2(capsys):
    assert cli.run(["eval", "--method", "magic", "x.json"]) == 2
    capsys.readouterr()


def test_output_is_deterministic(tmp_path, capsys):
    path = write_doc(tmp_path, grid_to_json(k4_grid()))
    cli.run(["eval", path])
    first = capsys.readouterr().out
    cli.run(["eval", path])
    second = capsys.readouterr().out
    assert first == second


def test_scalars_round_trip_through_grammar(tmp_path, capsys):
    f = transform(Z, sig([1, 0, 0, I]))
    doc = {"signatures": {"f": [str(e) for e in f.entries],
                          "u": ["1", "w"]},
           "vertices": [{"id": 0, "sig": "f", "rotation": ["a", "b", "c"]},
                        {"id": 1, "sig": "u", "rotation": ["d"]}],
           "edges": [["a", "b"], ["c", "d"]]}
    path = write_doc(tmp_path, doc)
    code, out = run_cli(capsys, ["eval", "--method", "brute", path])
    assert code == 0
    grid = grid_from_json(doc)
    assert AN(out["value"]) == naive_holant(grid)
