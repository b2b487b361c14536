import json
import subprocess
import sys

import pytest

from mincodes.cli import main, parse_matrix
from mincodes.code import LinearCode, is_minimal_code
from mincodes.constructions import construct
from mincodes.errors import MatrixParseError, PreconditionError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def e12(tmp_path):
    p = tmp_path / "e12.txt"
    p.write_text("4 2 2\n1 0\n0 1\n")
    return p


def test_construct_onedim_gcd(capsys):
    code, out, _ = run(capsys, "construct", "--recipe", "onedim-gcd", "--n", "12")
    assert code == 0
    assert out.splitlines()[1:] == ["12 1 4", "1", "3", "6", "4"]


def test_check_minimal(capsys, tmp_path):
    path = tmp_path / "l0.txt"
    assert run(capsys, "construct", "--recipe", "lambda0", "--n", "4", "--k", "2", "--output", str(path))[0] == 0
    code, out, _ = run(capsys, "check", "--input", str(path))
    assert code == 0
    assert "minimal" in out and "NOT" not in out


def test_check_not_minimal(capsys, e12):
    code, out, _ = run(capsys, "check", "--input", str(e12))
    assert code == 2
    assert "NOT minimal" in out and "counterexample" in out
    assert "(1, 3)" in out
    code, out, _ = run(capsys, "check", "--input", str(e12), "--format", "json")
    data = json.loads(out)
    assert code == 2 and data["verdict"] is False
    assert [1, 1] in data["per_message_failures"]


def test_parse_matrix(tmp_path):
    p = tmp_path / "ok.txt"
    p.write_text(
        "4 2 6\n1 0\n0 1\n1 1\n1 3\n1 2\n2 1\n"
    )
    assert parse_matrix(p).m == 6
    bad = tmp_path / "bad.txt"
    bad.write_text("4 2 2\n1 0\n7 1\n")
    with pytest.raises(MatrixParseError, match="line 3, column 1"):
        parse_matrix(bad)
    dep = tmp_path / "dep.txt"
    dep.write_text("4 2 2\n2 0\n0 2\n")
    with pytest.raises(PreconditionError):
        parse_matrix(dep)


@pytest.mark.parametrize(
    "content, fragment",
    [("4 2 2\n1 0\n7 1\n", "MatrixParseError"), ("4 2 2\n2 0\n0 2\n", "PreconditionError"),
     ("1 2 1\n0 0\n", "MatrixParseError")],
)
def test_check_errors_exit_1(capsys, tmp_path, content, fragment):
    p = tmp_path / "m.txt"
    p.write_text(content)
    code, _, err = run(capsys, "check", "--input", str(p))
    assert code == 1
    assert fragment in err


def test_error_messages(capsys, tmp_path):
    code, _, err = run(capsys, "ring-info", "--n", "1")
    assert code == 1 and "InvalidModulus" in err
    code, _, err = run(capsys, "check", "--input", str(tmp_path / "missing.txt"))
    assert code == 1
    code, _, err = run(capsys, "search-mmin", "--n", "12", "--k", "3", "--m-cap", "9", "--threshold", "100")
    assert code == 1 and "ThresholdExceeded" in err


def test_round_trip(capsys, tmp_path):
    for recipe, n, k in [("lambda0", 4, 2), ("lambda0-bi", 6, 2), ("onedim-gcd", 72, 1)]:
        path = tmp_path / f"{recipe}.txt"
        run(capsys, "construct", "--recipe", recipe, "--n", str(n), "--k", str(k), "--output", str(path))
        _, lam = construct(recipe, n, k)
        loaded = parse_matrix(path)
        assert loaded.columns == lam.columns
        assert loaded.span() == lam.span()
        code, out, _ = run(capsys, "check", "--input", str(path), "--format", "json")
        assert code == 0
        assert json.loads(out)["verdict"] == is_minimal_code(LinearCode(lam)).verdict


def test_json_is_byte_stable(capsys):
    argv = ["search-mmin", "--n", "4", "--k", "2", "--m-cap", "8", "--format", "json", "--extra", "3"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--workers", "2")
    assert a == b
    data = json.loads(a)
    assert data["m_min"] == 6 and data["monotonicity"]["holds"]
    assert list(data) == sorted(data)


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "4", "6", "--k", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n,k,lower_bound_exact")
    assert lines[1].startswith("4,2,6,7,6,6,12,12")
    assert "CONFLICT" in lines[1]
    assert lines[2].startswith("6,2,10,8,12,12,24,30")


def test_bounds_json_and_text(capsys):
    code, out, _ = run(capsys, "bounds", "--n", "8", "--k", "2", "--format", "json", "--no-verify")
    assert json.loads(out)["bounds"][0]["upper_bound"] == 12
    code, out, _ = run(capsys, "bounds", "--n", "4", "--k", "3")
    assert "Z_4, k=3: 9 <= m <= 15" in out


def test_ring_info_and_perp(capsys):
    code, out, _ = run(capsys, "ring-info", "--n", "6", "--k", "2", "--format", "json")
    data = json.loads(out)
    assert data["root_words"] == {"k": 2, "enumerated": 24, "formula": 30}
    assert data["units"] == [1, 5]
    code, out, _ = run(capsys, "perp", "--n", "4", "--vector", "2,2", "--format", "json")
    data = json.loads(out)
    assert data["generators"] == [[3, 1], [1, 1]]
    assert data["cardinality"] == 8 and data["span_matches_kernel"]


def test_threshold_env(capsys, monkeypatch):
    monkeypatch.setenv("MINCODES_THRESHOLD", "10")
    code, _, err = run(capsys, "search-mmin", "--n", "4", "--k", "2", "--m-cap", "8")
    assert code == 1 and "ThresholdExceeded" in err


def test_module_entry_point(e12):
    proc = subprocess.run([sys.executable, "-m", "mincodes", "check", "--input", str(e12)],
                          capture_output=True, text=True)
    assert proc.returncode == 2
