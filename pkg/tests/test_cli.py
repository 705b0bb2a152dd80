import json
import subprocess
import sys
from pathlib import Path

import pytest

from eulermeasure.cli import main, run_command, to_json
from eulermeasure.series import Polynomial, RationalFunction
from fractions import Fraction

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
ENTRIES = [json.loads(line) for line in (CORPUS / "expected.jsonl").read_text().splitlines() if line.strip()]


@pytest.fixture
def in_corpus(monkeypatch):
    monkeypatch.chdir(CORPUS)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines()], err


@pytest.mark.parametrize("entry", ENTRIES, ids=[" ".join(e["argv"]) for e in ENTRIES])
def test_corpus(entry, in_corpus, capsys):
    code, records, _ = run(entry["argv"], capsys)
    assert code == entry["exit"]
    assert records == entry["records"]


def test_output_is_deterministic(in_corpus, capsys):
    argv = ["trace", "triangle_edges.pset", "P", "triangle.maps"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_domain_errors_exit_2(in_corpus, capsys):
    code, records, err = run(["series", "chizero"], capsys)
    assert code == 2 and records == [] and "regularized" in err
    code, _, err = run(["series", "choose2", "--numerator", "1", "--denominator", "1,-1"], capsys)
    assert code == 2


def test_usage_errors_exit_1(in_corpus, capsys, tmp_path):
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["chi", "check.pset"], capsys)[0] == 1
    assert run(["chi", "no_such_file.pset", "S"], capsys)[0] == 1
    bad = tmp_path / "bad.pset"
    bad.write_text("dim 1;\nA = x1 <;\n")
    code, _, err = run(["chi", str(bad), "A"], capsys)
    assert code == 1 and "line 2" in err


def test_disagreement_exits_2(in_corpus, capsys, monkeypatch):
    from eulermeasure import euler
    monkeypatch.setattr(euler, "euler_measure_cells", lambda S: 42)
    assert run(["chi", "check.pset", "S"], capsys)[0] == 2


def test_run_command_returns_records(in_corpus):
    records = run_command(["series", "finite", "--n", "3", "--terms", "4"])
    assert records[0]["prefix"] == [1, 3, 3, 1] and records[0]["result"] == 8


def test_to_json():
    assert to_json(Fraction(6, 4)) == "3/2"
    assert to_json(Fraction(-4, 2)) == -2
    assert to_json(Polynomial(())) == [0]
    assert to_json(RationalFunction(Polynomial((2,)), Polynomial((1, -3)))) == {
        "numerator": [2], "denominator": [1, -3]}
    with pytest.raises(TypeError):
        to_json(1.5)


def test_console_entry_point(in_corpus):
    proc = subprocess.run([sys.executable, "-m", "eulermeasure", "chi", "check.pset", "S"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"command": "chi", "name": "S", "result": 0, "method": "fiber+cells"}
