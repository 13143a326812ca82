"""Command-line surface: formats, exit codes, determinism, negative control."""

import io
import json

from spencer_rr import cli, newton
from spencer_rr.selftest import run_selftest

PSU2_DOC = {
    "base": {"projective": 2},
    "bundle": {"builtin": "psu2", "a": 1},
    "lie": {"builtin": "su2"},
    "lambda": ["1", "0", "0"],
    "checks": ["mirror", "nilpotency", "obstruction", "perturbation"],
}


def run_cli(args):
    out = io.StringIO()
    code = cli.main(args, out=out)
    return code, out.getvalue()


def write_doc(tmp_path, doc, name="input.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_compute_psu2_total(tmp_path):
    code, text = run_cli(["compute", "--input", write_doc(tmp_path, PSU2_DOC)])
    assert code == 0
    assert "total:    7" in text
    assert "mirror comparison: equal = True" in text
    assert "published nilpotency claim holds: False" in text


def test_compute_json_output(tmp_path):
    code, text = run_cli(
        ["compute", "--input", write_doc(tmp_path, PSU2_DOC), "--format", "json"]
    )
    assert code == 0
    report = json.loads(text)
    assert report["euler"]["total"] == "7"
    assert report["euler"]["per_degree"] == ["1", "-5", "1"]
    assert report["mirror"]["mirror_equal"] is True
    assert report["paper_diff_summary"] == {"rows": 13, "matches": 5, "mismatches": 8}


def test_compute_symbolic_parameter(tmp_path):
    doc = {"base": {"projective": 2}, "bundle": {"builtin": "psu2", "a": "symbolic"}}
    code, text = run_cli(
        ["compute", "--input", write_doc(tmp_path, doc), "--format", "json"]
    )
    assert code == 0
    report = json.loads(text)
    assert report["euler"]["total"] == {"1": "10", "a": "-3"}
    assert report["euler"]["total_text"] == "10 - 3a"


def test_compute_p1_trivial(tmp_path):
    doc = {"base": {"projective": 1}, "bundle": {"rank": 1, "chern": []}}
    code, text = run_cli(
        ["compute", "--input", write_doc(tmp_path, doc), "--format", "json"]
    )
    assert code == 0
    assert json.loads(text)["euler"]["total"] == "2"


def test_compute_writes_output_file(tmp_path):
    out_file = tmp_path / "report.json"
    code, text = run_cli([
        "compute", "--input", write_doc(tmp_path, PSU2_DOC),
        "--output", str(out_file),
    ])
    assert code == 0
    assert "Euler characteristics" in text  # stdout stays human-readable
    stored = json.loads(out_file.read_text(encoding="utf-8"))
    assert stored["euler"]["total"] == "7"


def test_missing_base_exits_2(tmp_path, capsys):
    doc = {"bundle": {"rank": 1, "chern": []}}
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 2
    assert "base" in capsys.readouterr().err


def test_unknown_key_exits_2(tmp_path, capsys):
    doc = dict(PSU2_DOC)
    doc["extra"] = 1
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 2
    assert "extra" in capsys.readouterr().err


def test_float_rejected_with_field_pointer(tmp_path, capsys):
    doc = {"base": {"projective": 2}, "bundle": {"rank": 2, "chern": [0.5]}}
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 2
    assert "bundle.chern[0]" in capsys.readouterr().err


def test_chern_beyond_rank_rejected(tmp_path, capsys):
    doc = {"base": {"projective": 2}, "bundle": {"rank": 1, "chern": [1, 1]}}
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 2
    assert "chern[1]" in capsys.readouterr().err


def test_lambda_requires_lie(tmp_path, capsys):
    doc = {
        "base": {"projective": 2},
        "bundle": {"builtin": "psu2"},
        "lambda": ["1", "0", "0"],
    }
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 2
    assert "lambda" in capsys.readouterr().err


def test_malformed_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, _ = run_cli(["compute", "--input", str(path)])
    assert code == 2


def test_toml_input_accepted(tmp_path):
    path = tmp_path / "input.toml"
    path.write_text(
        '[base]\nprojective = 2\n[bundle]\nbuiltin = "psu2"\na = 1\n',
        encoding="utf-8",
    )
    code, text = run_cli(["compute", "--input", str(path), "--format", "json"])
    assert code == 0
    assert json.loads(text)["euler"]["total"] == "7"


def test_reports_byte_identical(tmp_path):
    args = ["compute", "--input", write_doc(tmp_path, PSU2_DOC), "--format", "json"]
    first = run_cli(args)
    second = run_cli(args)
    assert first == second


def test_report_round_trip(tmp_path):
    code, text = run_cli(
        ["compute", "--input", write_doc(tmp_path, PSU2_DOC), "--format", "json"]
    )
    report = json.loads(text)
    assert json.loads(json.dumps(report, sort_keys=True, indent=2)) == report


def test_verify_paper_text():
    code, text = run_cli(["verify-paper"])
    assert code == 0
    assert "summary: 5 match, 8 mismatch of 13 rows" in text
    assert "MISMATCH" in text and "MATCH" in text


def test_verify_paper_json():
    code, text = run_cli(["verify-paper", "--format", "json"])
    assert code == 0
    report = json.loads(text)
    keys = [row["key"] for row in report["paper_diff"]]
    assert "euler_total" in keys and "todd_h2_coefficient" in keys


def test_verify_paper_exit_zero_despite_mismatches():
    code, _ = run_cli(["verify-paper"])
    assert code == 0


def test_lie_command_su2():
    code, text = run_cli(["lie", "--algebra", "su2", "--lambda", "1,0,0",
                          "--max-degree", "2"])
    assert code == 0
    assert "weight function: 3/2" in text
    assert "published nilpotency claim holds: False" in text
    assert "degree 2: signed 2, unsigned 0" in text


def test_lie_command_custom_algebra(tmp_path):
    doc = {"dim": 3, "brackets": [[0, 1, 2, 1], [1, 2, 0, 1], [2, 0, 1, 1]]}
    path = tmp_path / "algebra.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, text = run_cli(["lie", "--algebra", str(path), "--lambda", "0,1,0",
                          "--max-degree", "1"])
    assert code == 0
    assert "semisimple: True" in text


def test_lie_command_toml_algebra(tmp_path):
    path = tmp_path / "algebra.toml"
    path.write_text(
        "dim = 3\nbrackets = [[0, 1, 2, 1], [1, 2, 0, 1], [2, 0, 1, 1]]\n",
        encoding="utf-8",
    )
    code, text = run_cli(["lie", "--algebra", str(path), "--lambda", "1,0,0",
                          "--max-degree", "1"])
    assert code == 0
    assert "weight function: 3/2" in text


def test_lie_command_bad_lambda(capsys):
    code, _ = run_cli(["lie", "--algebra", "su2", "--lambda", "1,0"])
    assert code == 2
    assert "--lambda" in capsys.readouterr().err


def test_max_degree_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SPENCER_RR_MAX_DEGREE", "2")
    doc = dict(PSU2_DOC)
    code, text = run_cli(
        ["compute", "--input", write_doc(tmp_path, doc), "--format", "json"]
    )
    assert code == 0
    nil = json.loads(text)["operators"]["nilpotency"]["per_degree"]
    assert [row["degree"] for row in nil] == [0, 1, 2]


def test_selftest_passes():
    code, text = run_cli(["selftest"])
    assert code == 0
    assert "0 failed" in text


def test_selftest_deterministic_output():
    assert run_cli(["selftest"]) == run_cli(["selftest"])


def test_internal_failure_exits_3(tmp_path, capsys, monkeypatch):
    """A broken dual-route check surfaces as exit code 3, not a wrong answer."""
    from spencer_rr import riemann_roch
    from spencer_rr.bundles import InternalCheckError

    def broken(spec, k):
        raise InternalCheckError("deliberately broken for the test")

    monkeypatch.setattr(riemann_roch, "term_class", broken)
    doc = {"base": {"projective": 2}, "bundle": {"builtin": "psu2", "a": 1}}
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 3
    assert "internal consistency failure" in capsys.readouterr().err


def test_noncompact_gram_request_exits_2(tmp_path, capsys):
    """Gram-based checks on a split real form (indefinite Killing form) are
    a validation error, not a crash."""
    sl2 = {"dim": 3, "brackets": [[0, 1, 1, 2], [0, 2, 2, -2], [1, 2, 0, 1]]}
    doc = {
        "base": {"projective": 2},
        "bundle": {"builtin": "psu2", "a": 1},
        "lie": sl2,
        "lambda": ["1", "0", "0"],
        "checks": ["perturbation"],
    }
    code, _ = run_cli(["compute", "--input", write_doc(tmp_path, doc)])
    assert code == 2
    assert "positive definite" in capsys.readouterr().err


def test_selftest_negative_control(monkeypatch):
    """Corrupting the shared Newton table must break the HRR anchor."""
    from spencer_rr import riemann_roch

    riemann_roch._todd_cache.clear()
    riemann_roch._form_cache.clear()
    original = newton.power_sums_from_elementary

    def corrupted(elementary, upto, zero):
        ps = original(elementary, upto, zero)
        return [p * 2 for p in ps]

    monkeypatch.setattr(newton, "power_sums_from_elementary", corrupted)
    lines = []
    code = run_selftest(lines.append)
    assert code == 1
    assert any(line.startswith("FAIL  hrr-anchor") for line in lines)
    monkeypatch.undo()
    riemann_roch._todd_cache.clear()
    riemann_roch._form_cache.clear()
