import io
import os

import pytest

from seqlibs.cli import EXIT_NO_SOLUTION, EXIT_OK, EXIT_USAGE, dispatch
from seqlibs.config import DATA_DIR


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_solve():
    assert _run("solve", "1, 0, 5, 8, 17") == (EXIT_OK, "24\n", "")
    assert _run("solve", "1,2")[1] == "4\n"


def test_solve_negative_first_term():
    code, out, _ = _run("solve", "--", "-2, 5, -4, 3, -6")
    assert code == EXIT_OK
    assert out == "1\n"


def test_solve_without_solution():
    code, out, _ = _run("solve", "1, 11")
    assert code == EXIT_NO_SOLUTION
    assert out == "no solution\n"


def test_solve_with_fallback():
    assert _run("solve", "--fallback", "(1)", "1, 11") == (EXIT_OK, "11\n", "")


def test_solve_malformed_input():
    code, out, err = _run("solve", "1, x, 3")
    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("error:")


def test_explain():
    code, out, _ = _run("explain", "7, 21, 14, 42, 28")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "84"
    assert "description: {powers-of-2}" in lines
    assert "method: interleaved" in lines
    assert "size: 2" in lines


def test_compose():
    assert _run("compose", "(1)", "(1)", "(1)", "(2)", "(-1)") == (EXIT_OK, "(-2, 5, -2, -4, 4)\n", "")


def test_invert():
    path = os.path.join(DATA_DIR, "worked_example.bases")
    code, out, _ = _run("invert", path, "--problem", "1, 0, 5, 8, 17")
    assert code == EXIT_OK
    assert "v: (-2, 5, -2, -4, 4)" in out
    assert "w: (1, -2, 1, 0, 1)" in out
    assert "next: 24" in out
    assert "z: (1, 6, 36, 32, -1)" in out


def test_invert_missing_file(tmp_path):
    code, _, err = _run("invert", str(tmp_path / "none.bases"))
    assert code == EXIT_USAGE
    assert "error:" in err


def test_extend_backward():
    code, out, _ = _run("extend", "(1, 1)", "1/2, 1/2", "5", "backward")
    assert code == EXIT_OK
    assert out == "-3/2, 1, -1/2, 1/2, 0, 1/2, 1/2\n"


def test_bench_structured():
    code, out, _ = _run("bench", "--solver", "emv1", "--format", "structured")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 62
    assert sum(" | Y | " in line for line in lines) == 27


def test_bench_table():
    code, out, _ = _run("bench", "--solver", "emv2")
    assert code == EXIT_OK
    assert "emv2: 18/62 correct" in out


def test_stable_list():
    code, out, _ = _run("stable", "list", "--no-primes")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("(1)")
    assert "cubic" in lines[0]
    assert "primes recognizer: off" in lines
    assert "fallback: none" in lines


def test_usage_errors():
    assert _run("frobnicate")[0] == EXIT_USAGE
    assert _run()[0] == EXIT_USAGE
    assert _run("extend", "(1)", "1", "2", "sideways")[0] == EXIT_USAGE


def test_usage_goes_to_the_error_stream():
    code, out, err = _run("frobnicate")
    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("usage: seqlibs")


@pytest.mark.parametrize("argv", [
    ["compose", "(1)", "--no-primes"],
    ["compose", "(1)", "--max-length", "3"],
    ["invert", "x.bases", "--format", "structured"],
    ["extend", "(1)", "1", "2", "forward", "--fallback", "(1)"],
    ["solve", "1, 2, 3", "--format", "table"],
    ["stable", "list", "--max-length", "3"],
])
def test_options_are_limited_to_the_commands_that_use_them(argv):
    code, out, err = _run(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert "unrecognized arguments" in err


def test_bad_stable_path(tmp_path):
    code, _, err = _run("solve", "--stable", str(tmp_path / "missing.json"), "1, 2")
    assert code == EXIT_USAGE
    assert "cannot read" in err


@pytest.mark.parametrize("argv", [["--version"], ["solve", "--help"]])
def test_informational_flags_exit_cleanly(argv):
    code, out, _ = _run(*argv)
    assert code == EXIT_OK
    assert out.startswith("seqlibs") or out.startswith("usage:")
