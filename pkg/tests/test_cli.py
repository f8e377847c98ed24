import json
import subprocess
import sys

import numpy as np
import pytest

from mbgame import gamefile
from mbgame.cli import main
from mbgame.fixtures import random_spec
from mbgame.model import MbgSpec


def write(path, doc):
    path.write_text(gamefile.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def ex4_file(tmp_path):
    assert main(["fixture", "example4", "--out", str(tmp_path / "ex4.json")]) == 0
    return str(tmp_path / "ex4.json")


def test_fixture_example4_round_trip(ex4_file, capsys):
    spec = gamefile.load_game(ex4_file)
    assert spec.payoffs[1][0] == 38 and spec.payoffs[1][-1] == 3
    assert main(["validate", ex4_file]) == 0
    assert "htilde=1024" in capsys.readouterr().out


def test_validate_bad_prior(tmp_path, capsys):
    doc = gamefile.example4_document()
    doc["prior"] = ["0.125", "0.05", "0.03", "0.125", "0.2", "0.2", "0.25", "0.2"]
    assert main(["validate", write(tmp_path / "bad.json", doc)]) == 1
    assert "prior not normalized" in capsys.readouterr().err


def test_validate_truncated(ex4_file, tmp_path, capsys):
    text = open(ex4_file).read()
    path = tmp_path / "cut.json"
    path.write_text(text[: len(text) // 2])
    assert main(["validate", str(path)]) == 2
    err = capsys.readouterr().err
    assert "cut.json:" in err


def test_validate_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "nope.json")]) == 2


def test_validate_structural_errors(tmp_path):
    doc = gamefile.example4_document()
    doc["schema_version"] = 7
    assert main(["validate", write(tmp_path / "v.json", doc)]) == 1
    doc = gamefile.example4_document()
    doc["auction"]["bids"][0] = [57, 70]  # reachable tie with bidder 2
    assert main(["validate", write(tmp_path / "t.json", doc)]) == 1


def test_size_cap_exit(tmp_path):
    spec = random_spec(np.random.default_rng(0), (1, 1, 1), g=5)
    doc = gamefile.game_document(spec)
    doc["groups"] = [3]  # one group of three: h̃ = 125**8
    assert main(["validate", write(tmp_path / "big.json", doc)]) == 4


def test_solve_example4(ex4_file, tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["solve", ex4_file, "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert [a["alpha"] for a in rep["argmax"]] == [1, 257, 513, 769]
    for a in rep["argmax"]:
        assert all(v.startswith("A_21=(70,30)") for v in a["groups"][1].values())
    assert rep["oracle"]["correspondence_ok"] and rep["oracle"]["argmax_subset_of_ne"]
    assert len(rep["potential"]["normalized_vector"]) == 1024
    assert (tmp_path / "rep.json.txt").read_text() == capsys.readouterr().out


def test_solve_strong_example4_not_potential(ex4_file):
    assert main(["solve", ex4_file, "--mode", "strong", "--oracle", "off"]) == 3


def test_solve_not_potential_exit_3(tmp_path, capsys):
    path = str(tmp_path / "r.json")
    assert main(["fixture", "random", "--seed", "3", "--out", path]) == 0
    out = tmp_path / "rep.json"
    assert main(["solve", path, "--out", str(out)]) == 3
    rep = json.loads(out.read_text())
    assert rep["potential"]["solvable"] is False
    assert rep["oracle"]["ne_profiles"] == [590]
    assert rep["generator"]["seed"] == 3
    assert "NOT potential" in capsys.readouterr().out


def test_singleton_groups_same_verdict(tmp_path):
    path = str(tmp_path / "s.json")
    main(["fixture", "random", "--seed", "1", "--groups", "1,1", "--kind", "strong", "--out", path])
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["solve", path, "--out", str(a)]) == main(["solve", path, "--mode", "strong", "--out", str(b)]) == 0
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ra["argmax"] == rb["argmax"]
    assert ra["oracle"]["ne_profiles"] == rb["oracle"]["ne_profiles"]


def test_random_potential_flag_is_potential(tmp_path):
    path = str(tmp_path / "p.json")
    main(["fixture", "random", "--seed", "11", "--potential", "--out", path])
    assert main(["solve", path, "--oracle", "off"]) == 0


def test_fixture_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["fixture", "random", "--seed", "0", "--out", str(a)])
    main(["fixture", "random", "--seed", "0", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    main(["fixture", "random", "--seed", "1", "--out", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_report_determinism(ex4_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["solve", ex4_file, "--out", str(a)])
    main(["solve", ex4_file, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.json.txt").read_bytes() == (tmp_path / "b.json.txt").read_bytes()


def test_report_alphas_decode(ex4_file, tmp_path):
    from mbgame.stp import lex_decode

    out = tmp_path / "rep.json"
    main(["solve", ex4_file, "--out", str(out)])
    rep = json.loads(out.read_text())
    radices = rep["layout"]["radices"]
    for a in rep["argmax"] + rep["oracle"]["mbne"]:
        digits = lex_decode(a["alpha"], radices)
        flat = [int(v.split("=")[0][3:]) for grp in a["groups"] for v in grp.values()]
        assert list(digits) == flat


def test_vector_size_gate(tmp_path):
    path = str(tmp_path / "big.json")
    main(["fixture", "random", "--seed", "2", "--groups", "2,1", "--kind", "strong", "-g", "3", "--out", path])
    spec = gamefile.load_game(path)
    assert spec.layout.htilde > gamefile.VECTOR_LIMIT
    out = tmp_path / "rep.json"
    assert main(["solve", path, "--oracle", "off", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert "normalized_vector" not in rep["potential"]
    assert rep["potential"]["payoff_route"] == "direct"
    # the matrix route cannot be materialised at this size
    assert main(["solve", path, "--oracle", "off", "--method", "stp"]) == 4


def test_oracle_command(ex4_file, tmp_path, capsys):
    out = tmp_path / "o.json"
    assert main(["oracle", ex4_file, "--out", str(out)]) == 0
    ne = json.loads(out.read_text())["oracle"]["ne_profiles"]
    assert {1, 257, 513, 769} <= set(ne)


def test_oracle_single_player(tmp_path):
    spec = MbgSpec((1,), 1, 2, [1.0], [[1.0, 4.0]])
    out = tmp_path / "o.json"
    assert main(["oracle", write(tmp_path / "one.json", gamefile.game_document(spec)), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["oracle"]["ne_profiles"] == [2]


def test_oracle_empty_set(tmp_path):
    pennies = MbgSpec((1, 1), 1, 2, [1.0], [[1, -1, -1, 1], [-1, 1, 1, -1]])
    out = tmp_path / "o.json"
    assert main(["oracle", write(tmp_path / "mp.json", gamefile.game_document(pennies)), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["oracle"]["ne_profiles"] == []


def test_member_list_groups(tmp_path):
    """Groups given as member lists are relabelled to contiguous blocks."""
    doc = gamefile.example4_document()
    doc["groups"] = [[2, 3], [1]]
    doc["players"]["labels"] = ["b1", "b2", "b3"]
    spec = gamefile.parse_game(doc)
    assert spec.group_sizes == (2, 1)
    assert spec.labels["players"] == ["b2", "b3", "b1"]
    base = gamefile.parse_game(gamefile.example4_document())
    # new player 1 is old player 2; the all-first profile is the same cell in both orders
    assert spec.payoffs[0][0] == base.payoffs[1][0]


def test_explicit_payoff_round_trip(tmp_path):
    spec = random_spec(np.random.default_rng(5), (1, 2))
    back = gamefile.load_game(write(tmp_path / "g.json", gamefile.game_document(spec)))
    assert np.array_equal(back.prior, spec.prior)
    assert np.array_equal(back.payoffs, spec.payoffs)


def test_console_entry_point(ex4_file):
    proc = subprocess.run(
        [sys.executable, "-m", "mbgame.cli", "validate", ex4_file], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("ok:")
