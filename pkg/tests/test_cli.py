"""Command-line surface: formats, verdicts, exit codes, determinism."""

import json

from distchrom.cli import main
from distchrom.coloring import Coloring, random_proper_coloring
from distchrom.families import kneser_complement, levi_graph
from distchrom.graphcore import Graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_graph_file(tmp_path, capsys):
    path = tmp_path / "lg5.graph"
    code, _, _ = run(capsys, "family", "levi", "--q", "5", "--out", str(path))
    assert code == 0
    g = Graph.from_text(path.read_text())
    assert g.n == 62 and all(g.degree(v) == 6 for v in range(62))


def test_family_stdout_and_json(capsys):
    code, out, _ = run(capsys, "family", "gs", "--q", "5", "--slopes", "1,2")
    assert code == 0
    assert out.splitlines()[0] == "25 100"
    code, out, _ = run(capsys, "family", "kneser", "--n", "6", "--r", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 20


def test_family_error_exit_code(capsys):
    code, _, err = run(capsys, "family", "levi", "--q", "6")
    assert code == 2
    assert "prime power" in err


def test_aut_and_chi(tmp_path, capsys):
    path = tmp_path / "lg2.graph"
    run(capsys, "family", "levi", "--q", "2", "--out", str(path))
    code, out, _ = run(capsys, "aut", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 336
    code, out, _ = run(capsys, "chi", str(path))
    assert json.loads(out)["chromatic_number"] == 2


def test_chid(tmp_path, capsys):
    path = tmp_path / "k22.graph"
    Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    path.write_text(Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).to_text())
    code, out, _ = run(capsys, "chid", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == 4
    assert payload["lower_bounds"]["2"]["mode"] == "exhaustive"


def test_verify_verdicts(tmp_path, capsys):
    gpath = tmp_path / "k63.graph"
    cpath = tmp_path / "k63.coloring"
    g = kneser_complement(6, 3)
    gpath.write_text(g.to_text())
    c = random_proper_coloring(g, 10, seed=5)
    cpath.write_text(c.to_text())
    code, out, _ = run(capsys, "verify", str(gpath), str(cpath))
    assert code == 0
    payload = json.loads(out)
    assert payload["proper"] is True
    assert payload["distinguishing"] is False
    assert payload["witness"] is not None
    # an improper coloring is reported, not an error
    bad = Coloring.from_sequence([1] * 19 + [2])
    cpath.write_text(bad.to_text())
    code, out, _ = run(capsys, "verify", str(gpath), str(cpath))
    assert code == 0
    assert json.loads(out)["proper"] is False


def test_verify_malformed_file(tmp_path, capsys):
    gpath = tmp_path / "g.graph"
    gpath.write_text(levi_graph(2).to_text())
    cpath = tmp_path / "c.coloring"
    cpath.write_text("0 1\n0 2\n")
    code, _, err = run(capsys, "verify", str(gpath), str(cpath))
    assert code == 2


def test_motion_bound_commands(capsys):
    code, out, _ = run(capsys, "motion", "bound", "--family", "levi", "--q", "7", "--t", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["coeff"] == 5630688 and payload["below_2"] is True
    code, out, _ = run(capsys, "motion", "bound", "--family", "weak", "--m", "3",
                       "--aut-order", "6", "--n", "4", "--c1-size", "1")
    assert json.loads(out)["below_2"] is True
    code, _, _ = run(capsys, "motion", "bound", "--family", "lg1", "--n", "8", "--k", "4")
    assert code == 2  # 2k = n violates the precondition


def test_motion_exact_small(capsys):
    code, out, _ = run(capsys, "motion", "exact", "--family", "levi", "--q", "2", "--t", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 168
    assert payload["least_prime"] == 2
    assert payload["lemma_satisfied"] is False  # the order-2 plane has no certificate
    assert payload["exact_EN"]["num"] * 1.0 / payload["exact_EN"]["den"] > 2


def test_gs_montecarlo_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "gs", "montecarlo", "--q", "5", "--trials", "3",
                         "--seed", "99", "--out", str(path))
        assert code == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da.pop("timestamp"), db.pop("timestamp")
    assert da == db
    assert da["baseline_order"] == 100


def test_reproduce_deterministic_and_exit(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "reproduce", "weak", "--seed", "7", "--out", str(path))
        assert code == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da.pop("timestamp"), db.pop("timestamp")
    assert da == db
    assert da["schema"] == "distchrom.report/1"
    assert all(c["passed"] for c in da["checks"])


def test_tsv_format(tmp_path, capsys):
    code, out, _ = run(capsys, "chi", "--format", "tsv", str(_write_graph(tmp_path)))
    assert code == 0
    lines = dict(line.split("\t") for line in out.strip().splitlines())
    assert lines["chromatic_number"] == "2"


def _write_graph(tmp_path):
    path = tmp_path / "p.graph"
    path.write_text(Graph.from_edges(3, [(0, 1), (1, 2)]).to_text())
    return path
