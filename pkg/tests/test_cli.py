import csv
import io
import json
import subprocess
import sys

import pytest
from gmpy2 import mpfr

from zetaforge import cli, verify
from zetaforge.numkernel import precision
from zetaforge.report import BENCH_FIELDS, RECORD_FIELDS, ReportRecord
from zetaforge.zetacore import zeta_real


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_rows(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_compute_general_s(capsys):
    code, out, _ = run(capsys, "compute", "--s", "1.5", "--prec-bits", "128", "--format", "json")
    assert code == 0
    (row,) = json_rows(out)
    assert set(row) == set(RECORD_FIELDS) - {"pass"}
    assert row["name"] == "zeta(1.5)"
    assert row["value"].startswith("2.61237534868548834334856756792407")
    assert row["terms_used"] > 0 and row["elapsed_us"] > 0


def test_compute_even_and_odd(capsys):
    code, out, _ = run(capsys, "compute", "--even-m", "1", "--prec-bits", "64", "--format", "json")
    assert code == 0
    assert json_rows(out)[0]["value"].startswith("1.6449340668482264")
    code, out, _ = run(capsys, "compute", "--s", "3", "--format", "json")
    assert json_rows(out)[0]["name"] == "zeta(3)"
    assert json_rows(out)[0]["value"].startswith("1.202056903159594285399738161511")
    code, out, _ = run(capsys, "compute", "--odd-m", "2", "--form", "eq9", "--format", "json")
    assert json_rows(out)[0]["value"].startswith("1.036927755143369926331365486457")


@pytest.mark.parametrize(
    "argv,kind",
    [
        (["compute", "--s", "1"], "pole"),
        (["compute", "--s", "-2"], "domain"),
        (["compute", "--s", "2.0001"], "near-integer"),
        (["compute", "--prec-bits", "4", "--s", "2.5"], "usage"),
        (["compute", "--s", "2.5", "--odd-m", "1"], "usage"),
        (["bernoulli", "--index", "-2"], "usage"),
        (["verify", "--suite", "eq99"], "usage"),
        (["bench", "--max-index", "5000"], "usage"),
    ],
)
def test_error_exit_code_and_reason(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == kind
    assert payload["reason"]


def test_value_string_round_trips_at_requested_precision(capsys):
    for prec in (64, 128, 300):
        _, out, _ = run(capsys, "compute", "--s", "2.5", "--prec-bits", str(prec), "--format", "json")
        text = json_rows(out)[0]["value"]
        with precision(prec + 64):
            back = mpfr(text)
            ref = zeta_real("2.5", prec + 64)
            assert abs(back - ref) <= ref * mpfr(2) ** (-prec + 1)


def test_compute_is_deterministic(capsys):
    _, a, _ = run(capsys, "compute", "--s", "3.7", "--format", "csv")
    _, b, _ = run(capsys, "compute", "--s", "3.7", "--format", "csv")
    strip = lambda t: [r[:4] for r in csv.reader(io.StringIO(t))]
    assert strip(a) == strip(b)


def test_compute_direct_strategy_flags(capsys):
    code, out, _ = run(
        capsys, "compute", "--s", "2.5", "--strategy", "direct", "--max-terms", "20", "--format", "json"
    )
    assert code == 0
    row = json_rows(out)[0]
    assert row["terms_used"] == 20
    assert float(row["tail_bound"]) > 1e-10


def test_bernoulli_examples(capsys):
    code, out, _ = run(capsys, "bernoulli", "--index", "2", "--format", "json")
    assert json_rows(out)[0]["value"] == "1/6"
    code, out, _ = run(capsys, "bernoulli", "--format", "json")
    assert json_rows(out)[0]["value"] == "1"
    code, out, _ = run(capsys, "bernoulli", "--index", "12", "--method", "both", "--format", "json")
    row = json_rows(out)[0]
    assert row["value"] == "-691/2730" and row["pass"] is True


def test_bernoulli_range_and_odd_index(capsys):
    code, out, _ = run(capsys, "bernoulli", "--range", "2:10", "--method", "milgram", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["name"] for r in rows] == ["B_2", "B_4", "B_6", "B_8", "B_10"]
    assert rows[-1]["value"] == "5/66"
    code, out, err = run(capsys, "bernoulli", "--index", "7", "--format", "json")
    assert code == 0 and json_rows(out)[0]["value"] == "0" and "zero" in err


def test_csv_header_is_fixed(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "eq5", "--max-m", "3", "--format", "csv")
    assert out.splitlines()[0] == ",".join(RECORD_FIELDS)
    _, out, _ = run(capsys, "bench", "--max-index", "10", "--format", "csv")
    assert out.splitlines()[0] == ",".join(BENCH_FIELDS)


def test_verify_eq5_hundred_exact_zeros(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eq5", "--max-m", "100", "--format", "json")
    rows = json_rows(out)
    assert code == 0
    assert len(rows) == 100
    assert all(r["value"] == "0" and r["pass"] is True for r in rows)


def test_verify_eq2_and_eq13b(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "eq2", "--prec-bits", "256", "--format", "json")
    assert code == 0 and json_rows(out)[0]["pass"] is True
    code, out, _ = run(
        capsys, "verify", "--suite", "eq13b", "--max-m", "10", "--prec-bits", "256", "--format", "json"
    )
    rows = json_rows(out)
    assert code == 0 and len(rows) == 10
    assert all(abs(float(r["value"])) <= 1e-40 for r in rows)


def test_verify_all_suites_plain(capsys):
    code, out, _ = run(capsys, "verify", "--max-m", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS ") for line in lines)
    for suite in verify.SUITES:
        assert any(suite in line for line in lines)


def test_verify_failure_exits_one(capsys, monkeypatch):
    def failing(prec, max_m):
        return [ReportRecord("eq2", "1e-3", "1e-70", 1, 1, False)]

    monkeypatch.setitem(verify.CHECKS, "eq2", failing)
    code, out, _ = run(capsys, "verify", "--suite", "eq2")
    assert code == 1
    assert out.startswith("FAIL eq2")


def test_bench_two_hundred(capsys):
    code, out, _ = run(capsys, "bench", "--max-index", "200", "--format", "json")
    rows = json_rows(out)
    assert code == 0
    assert len(rows) == 200
    for method in ("euler", "milgram"):
        mine = [r for r in rows if r["method"] == method]
        assert [r["index"] for r in mine] == list(range(2, 201, 2))
        cum = [r["cumulative_us"] for r in mine]
        assert cum == sorted(cum)
        assert all(r["elapsed_us"] > 0 for r in mine)
    assert all(r["cross_equal"] is True for r in rows)


def test_bench_empty(capsys):
    code, out, _ = run(capsys, "bench", "--max-index", "0", "--format", "json")
    assert code == 0 and out == ""


def test_bench_single_method(capsys):
    _, out, _ = run(capsys, "bench", "--max-index", "20", "--methods", "euler", "--format", "json")
    rows = json_rows(out)
    assert len(rows) == 10
    assert all(r["cross_equal"] is None for r in rows)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, out, _ = run(capsys, "bernoulli", "--index", "4", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    rows = list(csv.DictReader(target.open()))
    assert rows[0]["value"] == "-1/30"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zetaforge", "bernoulli", "--index", "6"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "B_6 = 1/42" in proc.stdout
