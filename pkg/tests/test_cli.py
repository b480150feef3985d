import csv
import io
import json
import math
from fractions import Fraction

import pytest

from polyasym.cli import UsageError, main, resolve_precision
from polyasym.report import (
    ConfigError,
    fit_rate,
    parse_config,
    parse_n_range,
    rows_to_csv,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "bernoulli", "--n", "2", "--mu", "1", "--z", "0")
    assert code == 0 and "value: 1/6" in out and "confidence: exact" in out
    code, out, _ = run(capsys, "eval", "--family", "euler", "--n", "0", "--mu", "1/2", "--z", "0.3")
    assert code == 0 and "value: 1\n" in out


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "euler", "--n", "3", "--mu", "-2", "--z", "1/3",
                       "--method", "finite-sum", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data[0]["confidence"] == "exact" and data[0]["error_estimate"] == "0"


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "eval", "bernoulli", "--n", "4", "--mu", "1/x")[0] == 2
    assert run(capsys, "eval", "bernoulli", "--n", "4", "--precision", "32")[0] == 2
    assert run(capsys, "compare", "bernoulli", "--n", "4", "--method", "nope")[0] == 2
    code, _, err = run(capsys, "eval", "bernoulli", "--n", "20", "--mu", "2", "--method", "watson")
    assert code == 3 and "finite-sum" in err
    assert run(capsys, "eval", "bernoulli", "--n", "4", "--mu", "1/2", "--method", "finite-sum")[0] == 3
    assert run(capsys, "report", str(tmp_path / "missing.cfg"))[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--method", "bogus"])
    assert exc.value.code == 2


def test_precision_resolution(monkeypatch):
    assert resolve_precision(None, {}) == 128
    assert resolve_precision(None, {"POLYASYM_PRECISION": "200"}) == 200
    assert resolve_precision(96, {"POLYASYM_PRECISION": "200"}) == 96
    with pytest.raises(UsageError):
        resolve_precision(None, {"POLYASYM_PRECISION": "lots"})
    with pytest.raises(UsageError):
        resolve_precision(63, {})


def test_precision_env_reaches_output(capsys, monkeypatch):
    monkeypatch.setenv("POLYASYM_PRECISION", "64")
    _, short, _ = run(capsys, "eval", "bernoulli", "--n", "5", "--mu", "1/2", "--z", "0.3", "--method", "watson")
    _, long, _ = run(capsys, "eval", "bernoulli", "--n", "5", "--mu", "1/2", "--z", "0.3", "--method", "watson",
                     "--precision", "256")
    assert len(long.splitlines()[0]) > len(short.splitlines()[0])


def test_compare_csv_quotes_complex(capsys):
    code, out, _ = run(capsys, "compare", "euler", "--n-range", "10:11", "--mu", "1.5+0.25i", "--z", "0.3",
                       "--method", "twopoint,watson", "--format", "csv", "--precision", "128")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["n"], r["method"]) for r in rows] == [("10", "twopoint"), ("10", "watson"),
                                                     ("11", "twopoint"), ("11", "watson")]
    for line in out.splitlines()[1:]:
        assert line.count('"') >= 4
    assert all(r["value"].endswith("i") for r in rows)


def test_compare_json_mirrors_csv(capsys):
    args = ("compare", "bernoulli", "--n-range", "4:8:2", "--mu", "1/2", "--z", "0.3", "--method", "watson")
    _, c, _ = run(capsys, *args, "--format", "csv")
    _, j, _ = run(capsys, *args, "--format", "json")
    assert list(csv.DictReader(io.StringIO(c))) == json.loads(j)


def test_compare_parallel_matches_serial(capsys):
    args = ("compare", "bernoulli", "--n-range", "4:12:4", "--mu", "1/2", "--z", "0.3",
            "--method", "watson,twopoint", "--format", "csv")
    assert run(capsys, *args)[1] == run(capsys, *args, "--jobs", "3")[1]


def test_finite_sum_rows_have_zero_error(capsys):
    _, out, _ = run(capsys, "compare", "euler", "--n-range", "0:20:5", "--mu", "-3", "--z", "5/2",
                    "--method", "finite-sum", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    assert all(r["abs_err"] == "0" and r["value"] == r["oracle"] for r in rows)


def test_compare_domain_errors_become_rows(capsys):
    code, out, _ = run(capsys, "compare", "bernoulli", "--n-range", "10:12", "--mu", "2", "--z", "0.3",
                       "--method", "watson", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and all(r["error"] and not r["value"] for r in rows)


def test_coeffs_examples(capsys):
    _, out, _ = run(capsys, "coeffs", "g", "--mu", "1", "--z", "0", "--terms", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert float(rows[1]["re"]) == 0.5
    assert abs(float(rows[1]["im"]) + 3.141592653589793) < 1e-15
    _, out, _ = run(capsys, "coeffs", "alpha", "--mu", "1/2", "--z", "0.3", "--terms", "0", "--format", "json")
    assert abs(float(json.loads(out)[0]["re"]) - math.cos(2 * math.pi * (0.3 - 0.25))) < 1e-15


def test_coeffs_residuals(capsys):
    for kind in ("beta-residue", "epsilon-residue"):
        code, out, _ = run(capsys, "coeffs", kind, "--m", "3", "--n", "9", "--z", "0.3", "--terms", "3",
                           "--precision", "256", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and rows
        assert all(float(r["residual"]) <= 2.0 ** (-256 + 16) * max(1, abs(float(r["re"])) + abs(float(r["im"])))
                   for r in rows)


def test_n_range_forms():
    assert parse_n_range("2:10:4") == [2, 6, 10]
    assert parse_n_range("3:5") == [3, 4, 5]
    assert parse_n_range("7, 9") == [7, 9]
    assert parse_n_range("") == []
    with pytest.raises(ConfigError):
        parse_n_range("1:5:0")


def test_config_errors():
    with pytest.raises(ConfigError):
        parse_config("colour = red\n")
    with pytest.raises(ConfigError):
        parse_config("[sweep]\nmethods = magic\n")
    with pytest.raises(ConfigError):
        parse_config("[sweep]\nprecision = 10\n")
    with pytest.raises(ConfigError):
        parse_config("[other]\n")


def test_csv_quoting():
    text = rows_to_csv([{"a": "1+2i", "b": "x,y", "c": "-3"}], ("a", "b", "c"))
    assert text.splitlines()[1] == '"1+2i","x,y",-3'


def test_fit_rate():
    assert fit_rate([(10, 2.0**-10), (20, 2.0**-20 * 2**10)]) == pytest.approx(0.0)
    assert fit_rate([(8, 1 / 8), (16, 1 / 16), (32, 1 / 32)]) == pytest.approx(-1.0)
    assert fit_rate([(0, 1.0), (5, 0.0)]) is None


def test_report_empty_sweep(capsys, tmp_path):
    cfg = tmp_path / "empty.cfg"
    cfg.write_text("output = unused\n")
    code, out, _ = run(capsys, "report", str(cfg), "--out", str(tmp_path / "r"))
    assert code == 0
    assert sorted(p.name for p in (tmp_path / "r").iterdir()) == ["manifest.md"]


def test_report_integer_mu_errors(capsys, tmp_path):
    cfg = tmp_path / "w.cfg"
    cfg.write_text("[sweep]\nname = w\nfamily = bernoulli\nmethods = watson\nn = 10:20:10\nmu = 2\nz = 0.3\n")
    code, out, _ = run(capsys, "report", str(cfg), "--out", str(tmp_path / "r"))
    assert code == 0 and "2 error rows" in out
    manifest = (tmp_path / "r" / "manifest.md").read_text()
    assert "- error rows: 2" in manifest and "01-w-watson.csv sha256:" in manifest


def test_report_malformed_config(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[sweep]\nn = 1:x\n")
    assert run(capsys, "report", str(cfg), "--out", str(tmp_path / "r"))[0] == 2


def test_report_deterministic(capsys, tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text("precision = 128\n[sweep]\nname = s\nfamily = euler\nmethods = watson, twopoint\n"
                   "n = 10:30:10\nmu = 1/2\nz = 0.3\nK = 1, 4\n")
    run(capsys, "report", str(cfg), "--out", str(tmp_path / "a"))
    run(capsys, "report", str(cfg), "--out", str(tmp_path / "b"), "--jobs", "2")
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_print_default_config(capsys):
    code, out, _ = run(capsys, "report", "--print-default-config")
    assert code == 0 and len(parse_config(out).sweeps) == 10
    assert Fraction(parse_config(out).sweeps[0].mus[1]) == -1
