import json

import pytest

from auslander import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_counts_csv(capsys):
    code, out, _ = run(["counts", "5", "--csv"], capsys)
    assert code == 0
    assert "5,120,3651" in out.splitlines()


def test_counts_json(capsys):
    code, out, _ = run(["counts", "4", "--threads", "1"], capsys)
    data = json.loads(out)
    assert code == 0 and data["t_recursive"] == 211 and data["ok"]


def test_poset_dot(capsys):
    code, out, _ = run(["poset", "3", "--format", "dot"], capsys)
    assert code == 0
    node_lines = [l for l in out.splitlines() if l.strip().endswith('";')]
    assert len(node_lines) == 19
    assert sum("->" in l for l in out.splitlines()) == 24


def test_poset_with_homology(capsys):
    code, out, _ = run(["poset", "3", "--format", "json", "--verify-homology"], capsys)
    assert code == 0
    assert len(json.loads(out)["nodes"]) == 19


def test_verify_with_homology(capsys):
    code, out, _ = run(["verify", "3", "--verify-homology"], capsys)
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") == 10


def test_homology_gate_is_usage_error(capsys):
    code, _, err = run(["verify", "5", "--verify-homology"], capsys)
    assert code == 2 and "refused" in err


def test_invalid_n(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["counts", "0"])
    assert e.value.code == 2


def test_unknown_command():
    with pytest.raises(SystemExit) as e:
        cli.main(["frobnicate", "3"])
    assert e.value.code == 2


def test_output_file_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["complex", "3", "-o", str(a), "--seed", "5"]) == 0
    assert cli.main(["complex", "3", "-o", str(b), "--seed", "5"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(json.loads(a.read_text())["vertices"]) == 15


def test_unwritable_output(tmp_path, capsys):
    code, _, err = run(["counts", "3", "-o", str(tmp_path / "missing" / "x.json")], capsys)
    assert code == 2 and "cannot write" in err


def test_exceptional_single_w(capsys):
    code, out, _ = run(["exceptional", "3", "--w", "2,1,3"], capsys)
    data = json.loads(out)
    assert code == 0 and data[0]["exceptional"] and len(data[0]["modules"]) == 3


def test_dimvec_csv(capsys):
    code, out, _ = run(["dimvec", "2", "--csv", "--verify-homology"], capsys)
    assert code == 0
    assert out.splitlines()[1] == '"1,2|1,2",1 1,1 2'


def test_csv_unsupported(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["poset", "3", "--csv"])
    assert e.value.code == 2
