"""CLI surface: exit codes, report formats, file round trips, determinism."""

import json
import subprocess
import sys

import pytest

from bmwcert import (
    JobConfig,
    SYMBOLIC,
    build_standard,
    export_family,
    import_rmatrix,
    main,
    run_job,
)
from bmwcert.errors import DimensionMismatch, ParseError

from conftest import SO4_TWIST_TEXT, SP2_TWIST_TEXT

F = SYMBOLIC


def write_twist(path, rows):
    path.write_text(json.dumps({"d": rows}))
    return str(path)


def test_verify_family_so4_json(capsys):
    code = main(["verify", "--family", "so", "--dim", "4", "--report", "json"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert doc["derived"]["nu"] == "q^-3"
    assert all(chk["pass"] for chk in doc["checks"])
    assert len(doc["checks"]) >= 25


def test_verify_wrong_sign_nu_exits_1(capsys):
    code = main(["verify", "--family", "sp", "--dim", "2", "--nu", "q^-3", "--report", "json"])
    out = capsys.readouterr().out
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "fail"
    by_id = {chk["id"]: chk for chk in doc["checks"]}
    assert not by_id["bmw-rk"]["pass"]
    assert "witness" in by_id["bmw-rk"]


def test_verify_bad_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["verify", "--input", str(bad)])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_verify_missing_file_exits_2(capsys):
    assert main(["verify", "--input", str("/no/such/file.json")]) == 2
    capsys.readouterr()


def test_verify_conflicting_source_exits_2(capsys):
    code = main(["verify", "--family", "so", "--dim", "3", "--input", "x.json"])
    assert code == 2
    capsys.readouterr()


def test_export_roundtrip_so3(tmp_path):
    out = tmp_path / "so3.json"
    export_family("so", 3, None, str(out))
    doc = json.loads(out.read_text())
    assert doc["dim"] == 3
    assert doc["nu"] == "q^-2"
    assert len(doc["entries"]) == 14
    op, nu = import_rmatrix(str(out))
    assert op == build_standard("so", 3).R
    assert nu == build_standard("so", 3).nu


def test_export_sp2_nu_text(tmp_path):
    out = tmp_path / "sp2.json"
    export_family("sp", 2, None, str(out))
    doc = json.loads(out.read_text())
    assert doc["dim"] == 2
    assert doc["nu"] == "-q^-3"


def test_export_identity_twist_equals_plain(tmp_path):
    plain = tmp_path / "plain.json"
    twisted = tmp_path / "twisted.json"
    ident = write_twist(tmp_path / "ident.json", [["1", "1"], ["1", "1"]])
    export_family("sp", 2, None, str(plain))
    export_family("sp", 2, ident, str(twisted))
    assert plain.read_text() == twisted.read_text()


def test_import_rejects_zero_index(tmp_path):
    bad = tmp_path / "zero.json"
    bad.write_text(
        json.dumps(
            {"dim": 2, "entries": [{"out": [0, 1], "in": [1, 1], "coeff": "q"}]}
        )
    )
    with pytest.raises(DimensionMismatch):
        import_rmatrix(str(bad))


def test_import_rejects_bad_grammar(tmp_path):
    bad = tmp_path / "gram.json"
    bad.write_text(
        json.dumps(
            {"dim": 2, "entries": [{"out": [1, 1], "in": [1, 1], "coeff": "q^(1/3)"}]}
        )
    )
    with pytest.raises(ParseError):
        import_rmatrix(str(bad))


def test_import_rejects_duplicates(tmp_path):
    bad = tmp_path / "dup.json"
    entry = {"out": [1, 1], "in": [1, 1], "coeff": "q"}
    bad.write_text(json.dumps({"dim": 2, "entries": [entry, entry]}))
    with pytest.raises(ParseError):
        import_rmatrix(str(bad))


def test_verify_exported_file_roundtrip(tmp_path, capsys):
    out = tmp_path / "so3.json"
    export_family("so", 3, None, str(out))
    code = main(["verify", "--input", str(out), "--report", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["status"] == "pass"


def test_verify_identity_operator_aborts(tmp_path, capsys):
    path = tmp_path / "ident.json"
    entries = [
        {"out": [i, j], "in": [i, j], "coeff": "1"} for i in (1, 2) for j in (1, 2)
    ]
    path.write_text(json.dumps({"dim": 2, "entries": entries}))
    code = main(["verify", "--input", str(path), "--report", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 1
    assert doc["status"] == "aborted"
    assert "NotSkewInvertible" in doc["reason"]


def test_report_determinism():
    config = JobConfig(source=("family", "so", 3), report_format="json")
    from bmwcert.report import render_json

    first, code1 = run_job(config)
    second, code2 = run_job(config)
    assert code1 == code2 == 0
    assert render_json(first) == render_json(second)


def test_numeric_mode_agrees_with_symbolic(capsys):
    from fractions import Fraction

    sym, _ = run_job(JobConfig(source=("family", "so", 3)))
    num, _ = run_job(JobConfig(source=("family", "so", 3), at_s=Fraction(3, 2)))
    sym_vec = [(chk["id"], chk["pass"]) for chk in sym.checks]
    num_vec = [(chk["id"], chk["pass"]) for chk in num.checks]
    assert sym_vec == num_vec


def test_twist_dimension_mismatch_exits_2(tmp_path, capsys):
    twist = write_twist(tmp_path / "d.json", SP2_TWIST_TEXT)
    code = main(["verify", "--family", "so", "--dim", "3", "--twist", twist])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_numeric_mode_excluded_point_exits_2(capsys):
    code = main(["verify", "--family", "so", "--dim", "3", "--at-s", "1"])
    assert code == 2
    capsys.readouterr()


def test_excluded_nu_exits_2(capsys):
    code = main(["verify", "--family", "so", "--dim", "3", "--nu", "q"])
    assert code == 2
    assert "excluded" in capsys.readouterr().err


def test_odd_sp_dimension_exits_2(capsys):
    code = main(["verify", "--family", "sp", "--dim", "3"])
    assert code == 2
    capsys.readouterr()


def test_verify_twist_via_cli(tmp_path, capsys):
    twist = write_twist(tmp_path / "d.json", SP2_TWIST_TEXT)
    code = main(
        ["verify", "--family", "sp", "--dim", "2", "--twist", twist, "--report", "json"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    by_id = {chk["id"]: chk for chk in doc["checks"]}
    for check_id in ("twist-valid", "twist-compat", "twist-closed-form", "twisted-x-match"):
        assert by_id[check_id]["pass"], check_id
    assert doc["derived"]["X_diag"] == ["q^-1", "q"]


def test_verify_so4_twist_via_cli(tmp_path, capsys):
    twist = write_twist(tmp_path / "d4.json", SO4_TWIST_TEXT)
    code = main(
        ["verify", "--family", "so", "--dim", "4", "--twist", twist, "--report", "json"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["status"] == "pass"
    assert doc["derived"]["X_diag"] == ["1", "q^-2", "q^2", "1"]


def test_sp_report_carries_nu_note(capsys):
    code = main(["verify", "--family", "sp", "--dim", "2", "--report", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert any("-q^(-1-2N)" in note for note in doc["notes"])


def test_detect_nu_flag(capsys):
    code = main(["verify", "--family", "sp", "--dim", "2", "--detect-nu", "--report", "json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["derived"]["nu"] == "-q^-3"


def test_report_to_file(tmp_path):
    out = tmp_path / "report.json"
    code = main(
        ["verify", "--family", "so", "--dim", "3", "--report", "json", "--out", str(out)]
    )
    assert code == 0
    assert json.loads(out.read_text())["status"] == "pass"


def test_export_twisted_roundtrip(tmp_path, capsys):
    twist = write_twist(tmp_path / "d.json", SP2_TWIST_TEXT)
    out = tmp_path / "sp2_twisted.json"
    export_family("sp", 2, twist, str(out))
    doc = json.loads(out.read_text())
    assert doc["provenance"]["source"] == "multiparametric-family"
    code = main(["verify", "--input", str(out), "--report", "json"])
    result = json.loads(capsys.readouterr().out)
    assert code == 0 and result["status"] == "pass"
    assert result["derived"]["X_diag"] == ["q^-1", "q"]


def test_numeric_twist_vector_agrees(tmp_path):
    from fractions import Fraction

    twist = write_twist(tmp_path / "d.json", SP2_TWIST_TEXT)
    sym, _ = run_job(JobConfig(source=("family", "sp", 2), twist=twist))
    num, _ = run_job(
        JobConfig(source=("family", "sp", 2), twist=twist, at_s=Fraction(3, 2))
    )
    assert [(c["id"], c["pass"]) for c in sym.checks] == [
        (c["id"], c["pass"]) for c in num.checks
    ]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bmwcert", "verify", "--family", "so", "--dim", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "status: pass" in proc.stdout
