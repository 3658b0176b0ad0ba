import json

import pytest

from cisnim import load_table
from cisnim.cli import run


@pytest.fixture
def ffile(tmp_path):
    p = tmp_path / "F.txt"
    p.write_text("# one forbidden position\n1 1 0\n")
    return str(p)


def test_solve_writes_cache(tmp_path, ffile, capsys):
    cache = str(tmp_path / "t.ptab")
    assert run(["solve", "--n", "100", "--forbidden", ffile, "--cache", cache]) == 0
    t = load_table(cache)
    assert t.n == 100 and set(t.f.members) == {(1, 1, 0)}
    assert "n=100" in capsys.readouterr().out


def test_classify_from_cache(tmp_path, ffile, capsys):
    cache = str(tmp_path / "t.ptab")
    run(["solve", "--n", "20", "--forbidden", ffile, "--cache", cache])
    capsys.readouterr()
    assert run(["classify", "--cache", cache, "2", "1", "0"]) == 0
    assert capsys.readouterr().out.strip() == "P"
    assert run(["classify", "--cache", cache, "1", "0", "1"]) == 0
    assert capsys.readouterr().out.strip() == "Forbidden"


def test_classify_without_cache_solves(capsys):
    assert run(["classify", "3", "2", "1"]) == 0
    assert capsys.readouterr().out.strip() == "P"
    assert run(["classify", "--misere", "1", "1", "0"]) == 0
    assert capsys.readouterr().out.strip() == "N"


@pytest.mark.parametrize("suite, extra", [
    ("oracle", ["--max", "24"]),
    ("thm5", []),
    ("lemma6", ["--truncate", "80"]),
    ("identity", []),
])
def test_verify_suites_pass(ffile, suite, extra, capsys):
    code = run(["verify", "--suite", suite, "--n", "128", "--forbidden", ffile] + extra)
    out = capsys.readouterr().out
    assert code == 0, out
    assert "FAIL" not in out and "PASS" in out


def test_usage_errors_print_help(capsys):
    assert run(["solve", "--bogus"]) == 2
    err = capsys.readouterr().err
    assert "usage:" in err and "--forbidden" in err
    assert run([]) == 2
    assert run(["solve"]) == 2


def test_bad_forbidden_file(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 1 0\n1 2\n")
    assert run(["solve", "--n", "10", "--forbidden", str(p)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_resource_error_exit_code(capsys):
    assert run(["solve", "--n", "200000", "--memory", "1"]) == 3
    assert "resource" in capsys.readouterr().err


def test_pi_curve_and_series(capsys):
    assert run(["pi-curve", "--max", "4"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "4,5,0.3125"
    assert run(["pi-series", "--base", "1", "--kmax", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "2,5,16,0.3125,0.1875"


def test_figure_to_file(tmp_path):
    out = tmp_path / "fig.pgm"
    assert run(["figure", "--n", "1", "--out", str(out)]) == 0
    assert out.read_bytes() == b"P5\n1 1\n255\n\x00"


def test_analyze_json(ffile, capsys):
    assert run(["analyze", "--n", "300", "--forbidden", ffile]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pi"]["pi"] == 13283


def test_periodicity_and_region_count(capsys):
    assert run(["periodicity", "--n", "64", "--row", "1"]) == 0
    assert "p=2" in capsys.readouterr().out
    assert run(["region-count", "--n", "16", "--box", "0,1,0,1,0,1", "--k", "2"]) == 0
    assert capsys.readouterr().out.strip().endswith("5")
