import csv
import io
import json
import subprocess
import sys

import pytest

from endsin1.cli import run_capture
from endsin1.report import SearchReport, search


def test_factor_lambda99_json():
    code, out, err = run_capture(["factor", "900071", "--method", "lambda99", "--json"])
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["p"] == "900071" and data["verdict"] == "factored"
    w = data["methods"][0]["witnesses"][0]
    assert (w["A"], w["B"], w["digit_class"], w["parameter"]) == ("34", "257", "99", "971")
    assert data["methods"][0]["candidates_tried"] == "54"


def test_certify_example():
    code, out, _ = run_capture(["certify", "900071", "--N", "84761", "--mode", "ten"])
    assert code == 0
    assert "root: 40140" in out
    code, out, _ = run_capture(["certify", "900071", "--N", "84762"])
    assert code == 1 and "root: None" in out


def test_trial_on_prime():
    code, out, _ = run_capture(["factor", "97", "--method", "trial"])
    assert code == 1
    assert "prime: true" in out


@pytest.mark.parametrize("argv", [
    ["factor", "97"],
    ["factor", "9x1"],
    ["factor", "-11"],
    ["factor", "900071", "--method", "lambda37x"],
    ["factor", "361", "--method", "lambda99"],
    ["factor", "71", "--method", "tau"],
    ["classify", "20"],
    ["certify", "900071", "--N", "99999999"],
    ["bench", "--from", "200", "--to", "100"],
    [],
])
def test_invalid_input_exits_2(argv):
    code, out, err = run_capture(argv)
    assert code == 2
    assert err.startswith("endsin1: error:") and err.count("\n") == 1


def test_guard_violation_exits_2(monkeypatch):
    monkeypatch.setenv("ENDSIN1_ORACLE_GUARD", "1000")
    code, _, err = run_capture(["bench", "--from", "900", "--to", "1100"])
    assert code == 2 and "guard" in err
    code, _, err = run_capture(["factor", "1009", "--method", "trial"])
    assert code == 2


def test_out_of_guard_verdict(monkeypatch):
    monkeypatch.setenv("ENDSIN1_ORACLE_GUARD", "1000")
    rep = search(900071, timing=False)
    assert rep.verdict == "factored" and not rep.oracle_checked
    rep = search(900091, timing=False)
    assert rep.witnesses == [] and rep.verdict == "out-of-guard"


def test_classify():
    code, out, _ = run_capture(["classify", "900071", "--json"])
    data = json.loads(out)
    assert code == 0
    assert data["mod11"] == "7" and data["trivial_factor"] is None
    assert data["offsets"]["99"]["D"] == "10000"
    assert data["methods"][:3] == ["lambda37", "lambda99", "lambda11"]
    code, out, _ = run_capture(["classify", "341"])
    assert "trivial_factor: 11" in out


def test_trivial_factor_verdict():
    code, out, _ = run_capture(["factor", "341", "--json", "--no-timing"])
    assert code == 0
    assert json.loads(out)["verdict"] == "trivial-factor"


def test_json_round_trip():
    for p in (900071, 341, 900091, 221291):
        rep = search(p, timing=False)
        again = SearchReport.from_dict(json.loads(rep.to_json()))
        assert again == rep
    rep = search(900071)
    assert SearchReport.from_dict(json.loads(rep.to_json())) == rep


def test_numbers_are_strings_at_any_size():
    big = 10 ** 40 + 1
    code, out, _ = run_capture(["classify", str(big), "--json"])
    assert code == 0 and json.loads(out)["p"] == str(big)


@pytest.mark.parametrize("p", ["900071", "221291", "129791", "1271"])
def test_no_timing_output_is_byte_stable(p):
    outs = set()
    for k in ("1", "2", "8"):
        for workers in ("1", "4"):
            code, out, _ = run_capture(["factor", p, "--json", "--no-timing",
                                        "--partitions", k, "--workers", workers])
            outs.add(out)
    assert len(outs) == 1


def test_auto_order_stops_at_first_witness():
    rep = search(900071, timing=False)
    assert [m.method for m in rep.methods] == ["trivial", "lambda99"]
    rep = search(221291, timing=False)
    assert [m.method for m in rep.methods][-1] == "fallback37"
    assert [w.factors for w in rep.witnesses] == [(313, 707)]


def test_orientation_outside_37_theorem_is_reported_honestly():
    # 1213 * 107: the factor ending in 3 is the larger one
    rep = search(1213 * 107, timing=False)
    assert rep.verdict == "no-witness-found" and rep.prime is False


def test_bench_csv(tmp_path):
    path = tmp_path / "bench.csv"
    code, out, _ = run_capture(["bench", "--from", "900001", "--to", "900101",
                                "--csv", str(path)])
    assert code == 0 and out == ""
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert {r["p"] for r in rows} == {str(p) for p in range(900001, 900102, 10)}
    row = next(r for r in rows if r["p"] == "900071" and r["method"] == "lambda99")
    assert row["found"] == "1" and row["witness"] == "349*2579"
    assert int(row["candidates_tried"]) < int(row["trial_divisions"]) == 161


def test_bench_empty_and_small():
    code, out, _ = run_capture(["bench", "--from", "902", "--to", "909"])
    assert code == 0 and out.strip() == ",".join(
        ["p", "method", "digit_class", "candidates_tried", "found", "witness",
         "trial_divisions"])
    code, out, _ = run_capture(["bench", "--from", "350", "--to", "370"])
    rows = list(csv.DictReader(io.StringIO(out)))
    hits = [r for r in rows if r["p"] == "361" and r["found"] == "1"]
    assert {r["witness"] for r in hits} == {"19*19"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "endsin1", "factor", "851", "--no-timing"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "851 = 23 * 37" in proc.stdout
