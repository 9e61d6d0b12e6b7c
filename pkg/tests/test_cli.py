"""The noether command line: formats, exit codes, determinism."""

import json

import pytest

from noether.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_subgroups_dot_diamond(capsys):
    code, out, _ = run(capsys, "subgroups", "builtin:Z6", "--format", "dot")
    assert code == 0
    assert out.count("[label=") == 4
    assert '"{0,3}"' in out and '"{0,2,4}"' in out
    assert out.count(" -- ") == 4


def test_subgroups_json_and_text(capsys):
    code, out, _ = run(capsys, "subgroups", "builtin:D8", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["subgroups"]) == 10
    code, out, _ = run(capsys, "subgroups", "builtin:D8")
    assert code == 0 and "10 subgroups" in out


def test_verify_builtin_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "builtin:D8")
    assert code == 0
    payload = json.loads(out)
    assert payload["axioms"]["passed"] and payload["theorems"]["passed"]
    probe = [c for c in payload["theorems"]["checks"] if c["name"] == "modular-law-probe"]
    assert probe[0]["status"] == "fail" and probe[0]["required"] is False


def test_verify_dual_flag(capsys):
    code, out, _ = run(capsys, "verify", "builtin:Z6", "--dual")
    assert code == 0
    payload = json.loads(out)
    assert payload["axioms"]["instance"].startswith("dual(")


def test_verify_lattice_file(tmp_path, capsys):
    path = tmp_path / "diamond.json"
    path.write_text(json.dumps({"size": 4, "covers": [[0, 1], [0, 2], [1, 3], [2, 3]]}))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0
    assert json.loads(out)["axioms"]["passed"]


def test_verify_output_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "builtin:S3")
    _, second, _ = run(capsys, "verify", "builtin:S3")
    assert first == second


def test_butterfly_command(capsys):
    code, out, _ = run(
        capsys,
        "butterfly",
        "builtin:Z6",
        "--x",
        "[[0,3],[0,1,2,3,4,5]]",
        "--y",
        "[[0],[0,2,4]]",
        "--format",
        "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["holds"] and payload["mutual_projection"] == [True, True]


def test_chase_command_forward_and_backward(capsys):
    leg = {
        "hom": {"domain": "builtin:Z6", "codomain": "builtin:Z6", "map": [0, 2, 4, 0, 2, 4]},
        "dir": "R",
    }
    code, out, _ = run(capsys, "chase", json.dumps([leg]), "--subgroup", "0,3", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"] == [0]
    code, out, _ = run(
        capsys, "chase", json.dumps([leg]), "--subgroup", "[0,2,4]", "--backward", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["result"] == [0, 1, 2, 3, 4, 5]


def test_refine_command(tmp_path, capsys):
    s = tmp_path / "s.json"
    t = tmp_path / "t.json"
    s.write_text(json.dumps({"group": "builtin:Z6", "terms": [[0, 1, 2, 3, 4, 5], [0]]}))
    t.write_text(json.dumps({"group": "builtin:Z6", "terms": [[0, 1, 2, 3, 4, 5], [0, 2, 4], [0]]}))
    code, out, _ = run(capsys, "refine", str(s), str(t), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["left"] == [[0, 1, 2, 3, 4, 5], [0, 2, 4], [0]]
    assert payload["left"] == payload["right"]


def test_projiso_command_exit_codes(capsys):
    s = json.dumps({"group": "builtin:Z6", "terms": [[0, 1, 2, 3, 4, 5], [0, 3], [0]]})
    t = json.dumps({"group": "builtin:Z6", "terms": [[0, 1, 2, 3, 4, 5], [0, 2, 4], [0]]})
    code, out, _ = run(capsys, "projiso", s, t, "--format", "json")
    assert code == 0
    assert json.loads(out)["matching"] == [[0, 1], [1, 0]]
    short = json.dumps({"group": "builtin:Z6", "terms": [[0, 1, 2, 3, 4, 5], [0]]})
    code, out, _ = run(capsys, "projiso", short, t, "--format", "json")
    assert code == 1
    assert json.loads(out)["matching"] is None


def test_counterexample_text_and_json(capsys):
    code, out, _ = run(capsys, "counterexample")
    assert code == 0
    assert "refuted" in out and "{0,3}" in out
    code, out, _ = run(capsys, "counterexample", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["reproduced"] is True
    assert payload["e1_holds"] is False
    assert payload["coarsest"] is False
    assert payload["coarsest_witness"] == [
        [[0, 1, 2, 3, 4, 5], [0, 3], [0]],
        [[0, 1, 2, 3, 4, 5], [0, 2, 4], [0]],
    ]


def test_usage_errors_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "subgroups", "builtin:NOPE")
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2
    code, _, err = run(capsys, "refine", '{"group": "builtin:Z6"}', '{"group": "builtin:Z6"}')
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_invalid_series_terms_exit_two(capsys):
    s = json.dumps({"group": "builtin:Z6", "terms": [[0, 1, 2, 3, 4, 5], [0, 1]]})
    code, _, err = run(capsys, "refine", s, s)
    assert code == 2 and "not a subgroup" in err
