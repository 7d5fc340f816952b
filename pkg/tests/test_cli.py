import json

import pytest

from qtetra.cli import main
from qtetra.serialize import dumps, load_example


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_shuffle_mul(capsys):
    code, out, _ = run(capsys, "shuffle-mul", "--quiver", "a2", "--left", "1", "--right", "2")
    assert code == 0
    data = json.loads(out)
    assert sorted(tuple(t["word"]) for t in data["terms"]) == [(1, 2), (2, 1)]


def test_shuffle_json_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "shuffle-mul", "--left", "1,2", "--right", "1")
    path = tmp_path / "x.json"
    path.write_text(out)
    code, again, _ = run(capsys, "shuffle-mul", "--left", str(path), "--right", "")
    assert code == 0
    assert json.loads(again) == json.loads(out)


def test_feigin(capsys):
    code, out, _ = run(capsys, "feigin", "--word", "1,2,1,2", "--input", "1,2")
    assert code == 0
    assert len(json.loads(out)["terms"]) == 3


def test_verify_pass_and_report(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", "--suite", "serre", "--quiver", "g2", "-o", str(report))
    assert code == 0
    assert "PASS serre [g2]" in err
    assert json.loads(report.read_text())["status"] == "pass"


def test_verify_klr(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "klr-example", "--quiver", "b2")
    assert code == 0
    assert json.loads(out)["results"][0]["details"]["omega"]["I2"] == "(v^-1 + v)*(1,1,2)"


def test_verify_failure_exit_code(capsys, tmp_path):
    # a seed override whose Lambda is not compatible makes the Laurent suite fail
    data = load_example("a2")
    data["seed"]["Lambda"] = [[0] * 4 for _ in range(4)]
    (tmp_path / "a2.json").write_text(dumps(data))
    code, _, err = run(capsys, "verify", "--suite", "laurent", "--quiver", "a2", "--seed-data", str(tmp_path))
    assert code == 1
    assert "FAIL" in err


def test_omega_symbolic_and_quiver_file(capsys, tmp_path):
    qfile = tmp_path / "q.json"
    qfile.write_text(json.dumps(load_example("b2")["quiver"]))
    code, out, _ = run(capsys, "omega", "--quiver", str(qfile), "--rep", "I2", "--symbolic")
    assert code == 0
    assert json.loads(out)["terms"][0]["word"] == [1, 1, 2]


def test_non_rigid_symbolic_is_check_failure(capsys):
    code, _, err = run(capsys, "omega", "--quiver", "kronecker", "--dim", "1,1", "--symbolic")
    assert code == 1
    assert err


def test_psi_tilde(capsys):
    code, out, _ = run(capsys, "psi-tilde", "--quiver", "a2", "--word", "1,2,1,2", "--rep", "I2", "--q", "3")
    assert code == 0
    assert len(json.loads(out)["terms"]) == 3


def test_rep_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "rep", "--quiver", "b2", "--random-rigid", "2,1", "--q", "3", "--gfield")
    assert code == 0
    path = tmp_path / "rep.json"
    path.write_text(out)
    code, again, _ = run(capsys, "rep", "--quiver", "b2", "--rep-file", str(path), "--q", "3", "--gfield")
    assert code == 0 and again == out


def test_hall(capsys):
    code, out, _ = run(capsys, "hall", "mul", "--quiver", "a2", "--q", "2", "--left", "S2", "--right", "S1")
    assert code == 0
    assert len(json.loads(out)["terms"]) == 1
    code, out, _ = run(capsys, "hall", "comul", "--quiver", "a2", "--left", "I2")
    assert code == 0


def test_cluster_mutate_involution(capsys, tmp_path):
    seed = tmp_path / "seed.json"
    seed.write_text(dumps(load_example("b2")["seed"]))
    code, once, _ = run(capsys, "cluster", "mutate", "--seed", str(seed), "--seq", "1,2,1")
    assert code == 0
    code, base, _ = run(capsys, "cluster", "mutate", "--seed", str(seed), "--seq", "")
    mid = tmp_path / "mid.json"
    mid.write_text(once)
    code, back, _ = run(capsys, "cluster", "mutate", "--seed", str(mid), "--seq", "1,2,1")
    assert code == 0 and back == base


def test_cluster_characters(capsys):
    code, out, _ = run(capsys, "cluster", "characters", "--quiver", "a2", "--word", "1,2,1,2", "--depth", "6")
    assert code == 0
    data = json.loads(out)
    assert sorted(v["rep"] for v in data["variables"]) == ["M(0,1)", "M(1,0)", "M(1,1)"]


def test_determinism(capsys):
    argv = ("omega", "--quiver", "g2", "--rep", "M(2,1)", "--symbolic")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("argv", [
    ("omega", "--quiver", "nowhere", "--rep", "S1"),
    ("cluster", "mutate", "--seed", "missing.json"),
    ("shuffle-mul", "--left", "7", "--right", "1"),
    ("verify", "--suite", "bogus"),
    ("frobnicate",),
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2
