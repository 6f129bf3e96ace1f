"""Tests for the command line front end."""

import json
import re

import pytest

from knotslopes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_trefoil(capsys):
    code, out, _ = run(capsys, "compute", "torus:2,3", "--n", "1")
    assert code == 0
    assert out == "q + q^3 - q^4\n"


def test_compute_color_zero(capsys):
    code, out, _ = run(capsys, "compute", "torus:3,4", "--n", "0")
    assert code == 0
    assert out == "1\n"


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--knot", "torus:2,3", "--n", "2",
                       "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["knot"] == "torus:2,3"
    assert doc["n"] == 2
    assert doc["polynomial"].startswith("q^2 + ")


def test_conflicting_knot_specs(capsys):
    code, _, err = run(capsys, "compute", "torus:2,3", "--knot", "torus:2,5")
    assert code == 2
    assert "conflicting knot specs" in err


def test_missing_knot_spec(capsys):
    code, _, err = run(capsys, "degrees")
    assert code == 2
    assert "no knot given" in err


def test_unknown_name(capsys):
    code, _, err = run(capsys, "compute", "name:99_999")
    assert code == 2
    assert "unknown knot name" in err


def test_alt_data_has_no_polynomial(capsys):
    code, _, err = run(capsys, "compute", "alt:3,0,2,3")
    assert code == 2
    assert "degrees" in err


def test_degrees_output(capsys):
    code, out, _ = run(capsys, "degrees", "name:8_19", "--max-n", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# max degrees of name:8_19, colors 0..5"
    assert lines[1:] == ["0", "8", "23", "43", "70", "102"]


def test_degrees_pipe_into_fit(tmp_path, capsys):
    code, out, _ = run(capsys, "degrees", "name:8_19", "--max-n", "12")
    assert code == 0
    seq_file = tmp_path / "d.seq"
    seq_file.write_text(out)
    code, out, _ = run(capsys, "fit", "--input", str(seq_file))
    assert code == 0
    assert "period: 2" in out
    assert "slopes: 6" in out


def test_fit_from_knot(capsys):
    code, out, _ = run(capsys, "fit", "name:9_43", "--kind", "max")
    assert code == 0
    assert "period: 3" in out
    assert "slopes: 16/3" in out
    assert "generating function:" in out


def test_fit_rejects_input_plus_knot(tmp_path, capsys):
    f = tmp_path / "x.seq"
    f.write_text("0\n1\n4\n9\n16\n25\n36\n")
    code, _, err = run(capsys, "fit", "torus:2,3", "--input", str(f))
    assert code == 2
    assert "not both" in err


def test_fit_constant_zero_file(tmp_path, capsys):
    f = tmp_path / "z.seq"
    f.write_text("0\n" * 8)
    code, out, _ = run(capsys, "fit", "--input", str(f))
    assert code == 0
    assert "period: 1" in out
    assert "n = 0 mod 1: 0" in out


def test_slopes_trefoil(capsys):
    code, out, _ = run(capsys, "slopes", "torus:2,3")
    assert code == 0
    assert "period: 1" in out
    assert "js: 3" in out
    assert "js*: 0" in out
    assert "jones diameter: 3" in out


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "name:9_47")
    assert code == 0
    assert "verdict: verified" in out
    assert "jones slopes, max degree: 9/2" in out


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "15 verified, 0 refuted-in-window, 1 no-data"
    row = re.compile(r"^\S+: (verified|no-data) "
                     r"\(period \d+, js [^)]*, js\* [^)]*\)$")
    for line in lines[:-1]:
        assert row.match(line), line
    assert "8_19: verified (period 2, js 6, js* 0)" in lines


def test_verify_refuted_exit_code(tmp_path, capsys):
    db = tmp_path / "slopes.tsv"
    db.write_text("3_1\t0\n")
    code, out, _ = run(capsys, "verify", "name:3_1", "--slope-db", str(db))
    assert code == 1
    assert "verdict: refuted-in-window" in out


def test_verify_all_json_deterministic(capsys):
    code, first, _ = run(capsys, "verify", "--all", "--json")
    assert code == 0
    code, second, _ = run(capsys, "verify", "--all", "--json")
    assert code == 0
    assert first == second
    docs = json.loads(first)
    assert len(docs) == 16
    assert all(d["knot"].startswith("name:") for d in docs)


def test_slopes_json_deterministic(capsys):
    runs = [run(capsys, "slopes", "name:8_20", "--json")[1]
            for _ in range(2)]
    assert runs[0] == runs[1]
    doc = json.loads(runs[0])
    assert doc["js"] == ["4/3"]
    assert doc["period"] == 3


def test_limit_exit_code(capsys):
    code, _, err = run(capsys, "compute", "name:8_19", "--n", "2",
                       "--limit-mb", "0")
    assert code == 3
    assert "memory budget" in err


def test_report_trefoil(capsys):
    code, out, _ = run(capsys, "report", "name:3_1")
    assert code == 0
    assert "crossing bounds: hold" in out
    assert "alternating checks: hold" in out
    assert "checkerboard slopes: 6, 0" in out


def test_report_refuted_exit(tmp_path, capsys):
    db = tmp_path / "slopes.tsv"
    db.write_text("8_19\t0,4\n")
    code, out, _ = run(capsys, "report", "name:8_19", "--slope-db", str(db))
    assert code == 1
    assert "verdict: refuted-in-window" in out


def test_bad_sequence_file(capsys):
    code, _, err = run(capsys, "fit", "--input", "/nonexistent/file.seq")
    assert code == 2
    assert err.startswith("error:")
