import json
import subprocess
import sys

import pytest

from achrolab import build_odd_q_matrix, is_member
from achrolab.cli import main
from achrolab.fileio import ParseError, parse_matrix, read_matrix, render_latex, render_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_and_verify(tmp_path, capsys):
    path = tmp_path / "m7.txt"
    code, out, _ = run(capsys, "construct", "--q", "7", "-o", str(path))
    assert code == 0
    text = path.read_bytes().decode()
    assert text.startswith("6 7\n") and "\r" not in text
    assert len(set(text.split()[2:])) == 17
    assert json.loads(out)["colours"] == 17
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and json.loads(out)["verdicts"]["member"]


def test_construct_stdout_and_latex(capsys):
    code, out, _ = run(capsys, "construct", "--q", "7")
    assert code == 0 and parse_matrix(out) == build_odd_q_matrix(7)
    code, out, _ = run(capsys, "construct", "--q", "9", "--latex")
    assert out.startswith("\\begin{pmatrix}") and "x_{3} & x_{1} & x_{2}" in out


def test_construct_even_q(capsys):
    code, _, err = run(capsys, "construct", "--q", "8")
    assert code == 2 and "odd q >= 7" in err


def test_construct_41_pipeline(tmp_path, capsys):
    path = tmp_path / "m41.txt"
    assert run(capsys, "construct", "--q", "41", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", str(path), "--diagnose")
    doc = json.loads(out)
    assert code == 0 and doc["diagnostics"]["all_applicable_hold"]
    assert doc["diagnostics"]["surplus"] == 3


def test_verify_duplicate_in_row(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\na a\nb c\n")
    code, out, err = run(capsys, "verify", str(path))
    doc = json.loads(out)
    assert code == 1
    assert doc["verdicts"]["violation"] == {"line": "row", "index": 1, "colour": "a",
                                            "message": "row 1 repeats colour 'a'"}
    assert "row 1" in err


def test_verify_incomplete(tmp_path, capsys):
    path = tmp_path / "inc.txt"
    path.write_text("# four colours on C4\n2 2\na b\nc d\n")
    code, out, _ = run(capsys, "verify", str(path))
    doc = json.loads(out)
    assert code == 1 and doc["verdicts"]["bad_pairs"] == [["a", "d"], ["b", "c"]]


@pytest.mark.parametrize("text", ["2 2\na b\nc\n", "2 2\na b\n", "x y\na\n", ""])
def test_verify_parse_errors(tmp_path, capsys, text):
    path = tmp_path / "ragged.txt"
    path.write_text(text)
    assert run(capsys, "verify", str(path))[0] == 2


def test_verify_missing_file(capsys):
    assert run(capsys, "verify", "/nonexistent/m.txt")[0] == 2


def test_verify_diagnose_not_applicable(tmp_path, capsys):
    path = tmp_path / "k.txt"
    path.write_text("1 3\na b c\n")
    code, out, _ = run(capsys, "verify", str(path), "--diagnose")
    assert code == 0 and json.loads(out)["diagnostics"]["applicable"] is False


def test_bounds(capsys):
    doc = json.loads(run(capsys, "bounds", "-p", "6", "-q", "41")[1])
    assert (doc["upper"], doc["lower"], doc["exact"]) == (89, 85, 85)
    doc = json.loads(run(capsys, "bounds", "-p", "6", "-q", "7")[1])
    assert (doc["upper"], doc["lower"], doc["exact"]) == (21, 17, None)
    doc = json.loads(run(capsys, "bounds", "-p", "1", "-q", "9")[1])
    assert doc["upper"] == 9 and "lower" not in doc
    assert run(capsys, "bounds", "-p", "7", "-q", "6")[0] == 2


def test_search_exact_achromatic(tmp_path, capsys):
    path = tmp_path / "w.txt"
    code, out, _ = run(capsys, "search", "-p", "2", "-q", "3", "--exact", "-o", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["result"]["achromatic_number"] == 4
    assert is_member(read_matrix(path)) and read_matrix(path).k == 4


def test_search_exact_exhausted(capsys):
    code, out, _ = run(capsys, "search", "-p", "2", "-q", "2", "--k", "3", "--exact")
    assert code == 1 and json.loads(out)["result"]["outcome"] == "exhausted"


def test_search_heuristic(tmp_path, capsys):
    path = tmp_path / "w.txt"
    code, out, _ = run(capsys, "search", "-p", "6", "-q", "7", "--k", "17", "--heuristic",
                       "--budget", "1000000", "--seed", "1", "-o", str(path))
    assert code == 0
    assert is_member(read_matrix(path)) and read_matrix(path).k == 17


def test_search_budget_exit(capsys):
    code, out, _ = run(capsys, "search", "-p", "2", "-q", "2", "--k", "3", "--heuristic",
                       "--budget", "100", "--seed", "0")
    assert code == 3 and json.loads(out)["result"]["outcome"] == "budget-exhausted"


def test_search_usage_errors(capsys):
    assert run(capsys, "search", "-p", "4", "-q", "5", "--exact")[0] == 2
    assert run(capsys, "search", "-p", "2", "-q", "3", "--heuristic", "--budget", "10")[0] == 2
    assert run(capsys, "search", "-p", "2", "-q", "3", "--heuristic", "--k", "4")[0] == 2
    assert run(capsys, "search", "-p", "3", "-q", "2")[0] == 2


def test_timings_opt_in(capsys):
    doc = json.loads(run(capsys, "search", "-p", "2", "-q", "2", "--k", "2")[1])
    assert "elapsed_seconds" not in doc["result"]
    doc = json.loads(run(capsys, "search", "-p", "2", "-q", "2", "--k", "2", "--timings")[1])
    assert "elapsed_seconds" in doc["result"]


def test_round_trip():
    for q in (7, 9, 21):
        m = build_odd_q_matrix(q)
        assert parse_matrix(render_matrix(m)) == m
    assert parse_matrix("  2   2 \n a\tb \n\n b  a\n").rows_as_tokens() == [["a", "b"], ["b", "a"]]
    with pytest.raises(ParseError):
        parse_matrix("2 2\na b\nb a\nc d\n")


def test_latex_layout():
    m = parse_matrix("1 2\nx1 7\n")
    assert render_latex(m) == "\\begin{pmatrix}\nx_{1} & 7\n\\end{pmatrix}\n"


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "achrolab", "bounds", "-p", "1", "-q", "9"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["upper"] == 9
