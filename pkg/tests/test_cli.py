import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from idgraphs import cli
from idgraphs import constructions as cons
from idgraphs.canon import canonical_form
from idgraphs.formats import from_graph6, to_graph6


def run(argv):
    buf = io.StringIO()
    code = cli.run(argv, buf)
    return code, buf.getvalue()


def test_check_examples():
    code, out = run(["check", "--construct", "paley:29", "--k", "16"])
    assert code == 0 and out.startswith("member\n") and "min_symdiff=14" in out
    code, out = run(["check", "--construct", "complete:5", "--k", "5"])
    assert code == 1 and out.startswith("non-member\n")
    q3 = to_graph6(cons.hypercube(3))
    code, out = run(["check", "--g6", q3, "--k", "4"])
    assert code == 1 and "witness X=" in out
    assert run(["check", "--g6", q3, "--k", "5", "--method", "corollary"])[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--k", "3"],
        ["check", "--construct", "paley:7", "--k", "3"],
        ["check", "--construct", "nosuch:3", "--k", "3"],
        ["check", "--construct", "path:3", "--k", "9"],
        ["check", "--g6", "!!", "--k", "1"],
        ["check", "--construct", "path:x", "--k", "1"],
        ["table", "--k", "5..2"],
        ["frobnicate"],
        ["--threads", "0", "table", "--k", "1"],
    ],
)
def test_bad_arguments_exit_2(argv):
    assert run(argv)[0] == 2


def test_infeasible_exit_3():
    assert run(["mink", "--construct", "complete:3"]) == (3, "none\n")
    assert run(["minid", "--construct", "complete:3"])[0] == 3
    assert run(["search", "--n", "5", "--k", "3"])[0] == 3


def test_mink_minid():
    assert run(["mink", "--construct", "hypercube:3"]) == (0, "5\n")
    assert run(["mink", "--construct", "cube_centre"]) == (0, "6\n")
    assert run(["mink", "--construct", "srg_extend:paley:13:3"]) == (0, "11\n")
    code, out = run(["minid", "--construct", "paley:13"])
    assert code == 0 and out.splitlines()[0] == "size=4"


def test_edges_and_g6_file_sources(tmp_path):
    G = cons.paley(13)
    e = tmp_path / "g.edges"
    code, text = run(["construct", "paley:13", "--format", "edges"])
    e.write_text(text)
    g = tmp_path / "g.g6"
    g.write_text(to_graph6(G) + "\n")
    assert run(["mink", "--edges", str(e)]) == (0, "8\n")
    assert run(["mink", "--g6", str(g)]) == (0, "8\n")
    g.write_text(to_graph6(G) + "\n" + to_graph6(G) + "\n")
    assert run(["mink", "--g6", str(g)])[0] == 2


@pytest.mark.parametrize("spec", ["paley:29", "rshcd:2", "hypercube:4", "bipartite:2:3", "srg_extend:paley:17:2", "cube_centre", "kneser:7,2", "latin_complement:6"])
def test_construct_round_trip(spec):
    code, out = run(["construct", spec])
    assert code == 0
    G = cli.build_construct(spec)
    assert canonical_form(from_graph6(out.strip())) == canonical_form(G)


def test_table_rows():
    code, out = run(["table", "--k", "1..20"])
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "lower", "upper", "example"]
    lower = [int(r[1]) for r in rows[1:]]
    assert lower == [1, 2, 4, 5, 8, 9, 11, 13, 16, 17, 18, 21, 22, 25, 26, 29, 30, 31, 36, 37]
    assert "\r" not in out


def test_catalog():
    code, out = run(["catalog", "--n", "5", "--k", "4"])
    g6 = [line for line in out.splitlines() if line and not line.startswith(("#", " "))]
    assert code == 0 and len(g6) == 4
    assert out.count("# graph") == 4
    assert run(["catalog", "--n", "5", "--k", "4", "--no-listing"])[1].count("\n") == 4


def test_prob_csv():
    code, out = run(["prob", "--construct", "paley:29", "--k", "16", "--s", "1..29", "--samples", "2000", "--seed", "7", "--mode", "monte-carlo"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["s"]) for r in rows] == list(range(1, 30))
    bounds = [Fraction(r["bound_exact"]) for r in rows]
    assert all(a <= b for a, b in zip(bounds[:15], bounds[1:16]))
    assert all(float(r["bound"]) == float(Fraction(r["bound_exact"])) for r in rows)
    again = run(["prob", "--construct", "paley:29", "--k", "16", "--s", "1..29", "--samples", "2000", "--seed", "7", "--mode", "monte-carlo", "--threads", "2"])
    assert again[1] == out


def test_search_log_and_exit(tmp_path):
    log = tmp_path / "log.jsonl"
    code, out = run(["search", "--n", "8", "--k", "5", "--mode", "anneal", "--restarts", "2", "--max-steps", "20000", "--log", str(log)])
    assert code == 0
    for line in out.splitlines():
        assert cli.gr_membership(from_graph6(line), 5).member
    recs = [json.loads(x) for x in log.read_text().splitlines()]
    assert recs[-1]["summary"] and recs[-1]["status"] in ("complete", "budget-exhausted")
    assert recs[-1]["witnesses"] == len(out.splitlines()) >= 1
    assert all({"seed", "restart", "step", "cost"} <= r.keys() for r in recs[:-1])


def test_parse_range():
    assert cli.parse_range("1..3,7") == [1, 2, 3, 7]
    with pytest.raises(cli.UsageError):
        cli.parse_range("a..b")


def test_manifest_replay(tmp_path, capsys):
    man = tmp_path / "m.json"
    out = tmp_path / "o.csv"
    argv = ["prob", "--construct", "paley:13", "--s", "3..5", "--samples", "3000", "--seed", "2", "--mode", "monte-carlo", "--manifest", str(man), "-o", str(out)]
    assert cli.main(argv) == 0
    rec = json.loads(man.read_text())
    assert rec["seed"] == 2 and rec["command"] == "prob"
    assert {"numpy", "python", "idgraphs", "backend"} <= rec["versions"].keys()
    import hashlib

    assert rec["output_sha256"] == hashlib.sha256(out.read_bytes()).hexdigest()
    capsys.readouterr()
    assert cli.main(["replay", str(man)]) == 0
    assert "matches" in capsys.readouterr().err


def test_console_entry_points():
    res = subprocess.run([sys.executable, "-m", "idgraphs", "mink", "--construct", "paley:9"], capture_output=True, text=True)
    assert (res.returncode, res.stdout) == (0, "6\n")
    res = subprocess.run(["idgraphs", "check", "--construct", "complete:5", "--k", "5"], capture_output=True, text=True)
    assert res.returncode == 1
