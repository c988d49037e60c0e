import io
import subprocess
import sys

import pytest

from conftest import ALL_FOUR, INTRO, TRIANGLE
from nestedsat.cli import run_cli
from nestedsat.harness import brute_force_sat, check_witness, random_instance
from nestedsat.prep import RawClauseSet, emit_dimacs, parse_dimacs


def write(tmp_path, clauses, n=None, name="f.cnf"):
    n = n if n is not None else max((abs(x) for c in clauses for x in c), default=0)
    p = tmp_path / name
    p.write_text(emit_dimacs(RawClauseSet(n, [list(c) for c in clauses])))
    return str(p)


def cli(argv, capsys):
    code = run_cli(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_sat(tmp_path, capsys):
    code, out, _ = cli(["solve", write(tmp_path, TRIANGLE)], capsys)
    assert code == 10
    assert out.splitlines() == ["s SATISFIABLE"]


def test_solve_unsat(tmp_path, capsys):
    code, out, _ = cli(["solve", write(tmp_path, ALL_FOUR)], capsys)
    assert code == 20
    assert out.splitlines() == ["s UNSATISFIABLE"]


def test_solve_witness(tmp_path, capsys):
    code, out, _ = cli(["solve", "--witness", write(tmp_path, TRIANGLE)], capsys)
    assert code == 10
    assert out.splitlines()[1] == "v 1 2 -3 0"


def test_solve_not_nested(tmp_path, capsys):
    code, out, err = cli(["solve", write(tmp_path, INTRO)], capsys)
    assert code == 2
    assert "clauses 1 and 3" in err


def test_solve_no_sort(tmp_path, capsys):
    path = write(tmp_path, [[1, 3], [2, 3]])
    code, _, err = cli(["solve", "--no-sort", path], capsys)
    assert code == 2 and "straddles" in err
    code, out, _ = cli(["solve", path], capsys)
    assert code == 10


def test_solve_trivial_statuses(tmp_path, capsys):
    code, out, _ = cli(["solve", "--witness", write(tmp_path, [[2], [-2, 3], [1, 3]])], capsys)
    assert code == 10
    assert out.splitlines() == ["s SATISFIABLE", "v -1 2 3 0"]
    code, _, _ = cli(["solve", write(tmp_path, [[1], [-1]])], capsys)
    assert code == 20


def test_solve_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n"))
    code, out, _ = cli(["solve", "-"], capsys)
    assert code == 20


def test_check_intro(tmp_path, capsys):
    code, out, _ = cli(["check", write(tmp_path, INTRO)], capsys)
    assert code == 2
    assert out.splitlines()[0] == "not nested"
    assert "clauses 1 and 3" in out


def test_check_nested(tmp_path, capsys):
    code, out, _ = cli(["check", write(tmp_path, [[1, 3], [2, 3]])], capsys)
    assert code == 0
    assert out.splitlines() == ["nested", "not ordered: clause 1 straddles later clause 2"]
    code, out, _ = cli(["check", write(tmp_path, [[2, 3], [1, 3]])], capsys)
    assert out.splitlines() == ["nested", "ordered"]


def test_sort(tmp_path, capsys):
    code, out, _ = cli(["sort", write(tmp_path, [[1, 3], [2, 3]])], capsys)
    assert code == 0
    assert out == "p cnf 3 2\n2 3 0\n1 3 0\n"
    code, _, _ = cli(["sort", write(tmp_path, INTRO)], capsys)
    assert code == 2


def test_gen_is_deterministic_and_nested(tmp_path, capsys):
    code, out, _ = cli(["gen", "--vars", "30", "--clauses", "20", "--seed", "4"], capsys)
    assert code == 0
    again = cli(["gen", "--vars", "30", "--clauses", "20", "--seed", "4"], capsys)[1]
    assert out == again
    p = tmp_path / "g.cnf"
    p.write_text(out)
    assert cli(["check", str(p)], capsys)[1] == "nested\nordered\n"


def test_fuzz_and_bench(tmp_path, capsys):
    csv = tmp_path / "f.csv"
    code, out, _ = cli(["fuzz", "--count", "50", "--max-vars", "10", "--seed", "2",
                        "--csv", str(csv)], capsys)
    assert code == 0 and "agreements 50" in out
    assert csv.read_text().count("\n") == 51
    code, out, _ = cli(["fuzz", "--exhaustive", "--max-vars", "2", "--max-clauses", "2"], capsys)
    assert code == 0 and "instances  23" in out
    code, out, _ = cli(["bench", "--sizes", "100:50", "1000:500", "--backend", "all",
                        "--repeat", "1"], capsys)
    assert code == 0 and "time ratios" in out


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["solve"],
    ["solve", "/no/such/file.cnf"],
    ["solve", "--bogus", "x.cnf"],
    ["gen", "--vars", "3"],
])
def test_usage_errors(argv, capsys):
    code, _, err = cli(argv, capsys)
    assert code == 1
    assert err


def test_parse_error_exit(tmp_path, capsys):
    p = tmp_path / "bad.cnf"
    p.write_text("p cnf 1 1\n2 0\n")
    code, _, err = cli(["solve", str(p)], capsys)
    assert code == 1 and "line 2" in err


def test_witness_and_exit_codes_on_fuzzed_files(tmp_path, capsys):
    for k in range(200):
        db = random_instance(41, k, 12)
        path = tmp_path / f"i{k}.cnf"
        path.write_text(emit_dimacs(db))
        code, out, _ = cli(["solve", "--witness", str(path)], capsys)
        lines = out.splitlines()
        oracle = brute_force_sat(db).verdict
        assert lines[0] == f"s {oracle.value}"
        assert code == (10 if oracle.name == "SAT" else 20)
        if code == 10:
            lits = [int(x) for x in lines[1].split()[1:-1]]
            original = parse_dimacs(path.read_text())
            assert check_witness(original.clauses, {abs(x): x > 0 for x in lits})


def test_console_script(tmp_path):
    path = write(tmp_path, TRIANGLE)
    proc = subprocess.run([sys.executable, "-m", "nestedsat.cli", "solve", path],
                          capture_output=True, text=True)
    assert proc.returncode == 10
    assert proc.stdout == "s SATISFIABLE\n"
