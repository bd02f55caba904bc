import io
import json

import pytest

from exactpde.catalog import loads
from exactpde.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_hand_proved_entry():
    code, out, _ = call("verify", "S2-03", "--seed", "1", "--grid", "5x5")
    assert code == 0
    line = out.splitlines()[0]
    assert line.startswith("S2-03 PASS max r̂ ")
    value = float(line.split()[4])
    assert value <= 1e-9 and " ≤ " in line


def test_constraint_violation_exits_2():
    code, _, err = call("verify", "S2-05", "--param", "n=1")
    assert code == 2
    assert "ConstraintViolation" in err and "n != 1" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "S2-03", "--bogus"],
        ["verify", "S2-03", "--grid", "5by5"],
        ["verify", "S2-03", "--seed", "a,b"],
        ["verify", "S2-03", "--window", "1,0,0,1"],
        ["verify", "S2-03", "--param", "q=1"],
        ["verify", "S2-03", "--tol", "-1"],
        ["verify", "S9-99"],
        ["list", "--seed", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_quarantined_failure_does_not_fail_the_run():
    code, out, _ = call("verify", "S2-04", "--seed", "1")
    assert code == 0
    assert out.startswith("S2-04 QUARANTINED-FAIL")
    assert "corrected reading: PASS" in out


def test_failing_entry_exits_1(tmp_path):
    code, out, _ = call("export-catalog")
    doc = json.loads(out)
    for e in doc["entries"]:
        if e["id"] == "S2-03":
            e["residual"] = "(w_tx - w*w_x)^2 + (2*w_t + w^2)*w_x^2"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, _ = call("verify", "S2-03", "--seed", "1", "--catalog", str(path))
    assert code == 1
    assert "S2-03 FAIL" in out and "triage" in out


def test_list_and_show():
    code, out, _ = call("list")
    assert code == 0 and "80 entries" in out and "S4-12" in out
    code, out, _ = call("show", "S2-03")
    assert code == 0
    assert "residual: (w_tx - w*w_x)^2 + (2*w_t - w^2)*w_x^2 = 0" in out
    code, out, _ = call("show", "S2-18")
    assert "QUARANTINED" in out and "corrected residual" in out


def test_export_catalog_round_trip(tmp_path):
    path = tmp_path / "cat.json"
    assert call("export-catalog", str(path))[0] == 0
    assert len(loads(path.read_text(encoding="utf-8"))) == 80


def test_report_and_csv_files(tmp_path):
    rep, csvp = tmp_path / "r.json", tmp_path / "r.csv"
    code, _, _ = call("verify", "S2-01", "--seed", "1,2", "--report", str(rep), "--csv", str(csvp))
    assert code == 0
    doc = json.loads(rep.read_text(encoding="utf-8"))
    assert doc["config"]["seeds"] == [1, 2]
    assert doc["reports"][0]["id"] == "S2-01"
    assert csvp.read_text(encoding="utf-8").splitlines()[0] == "id,tier,status,max_rhat,faults"


def test_bad_catalog_path_exits_2(tmp_path):
    assert call("list", "--catalog", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert call("list", "--catalog", str(bad))[0] == 2
