import dataclasses
import json

import numpy as np
import pytest

from exactpde.catalog import default_params, get
from exactpde.evaluate import EvalEnv, eval_expr, residual_eval
from exactpde.funcspace import sample
from exactpde.expr import parse, to_text
from exactpde.verifier import (
    VerifyConfig,
    csv_rows,
    fd_partials,
    report_document,
    summarize,
    verify_all,
    verify_entry,
)

FAST = VerifyConfig(seeds=(1,))


def test_fd_partials_examples():
    # t*x has no truncation error, so a larger step keeps rounding below 1e-9
    j = fd_partials(lambda t, x: t * x, 2.0, 3.0, 1e-2)
    assert j.d_tx == pytest.approx(1.0, abs=1e-9)
    j = fd_partials(lambda t, x: np.exp(t + x), 0.4, 0.3, 1e-3)
    for c in (j.d_t, j.d_x, j.d_tt, j.d_tx, j.d_xx):
        assert c == pytest.approx(j.v, rel=1e-7)


def test_fd_partials_batched_points():
    t = np.array([0.7, 0.9, 1.1])
    x = np.array([0.4, 0.5, 0.6])
    j = fd_partials(lambda t, x: np.sin(t * x), t, x, 1e-3)
    assert np.allclose(j.d_tx, np.cos(t * x) - t * x * np.sin(t * x), rtol=1e-8)


def test_hand_proved_entry_passes(catalog):
    rep = verify_entry(get(catalog, "S2-03"), VerifyConfig())
    assert rep.status == "PASS"
    assert rep.max_rhat <= 1e-9
    assert all(s.fd_ok and s.fd_checked == 10 for s in rep.seeds)
    assert rep.triage() is None


def test_broken_entry_fails_with_triage(catalog):
    e = get(catalog, "S2-03")
    bad = dataclasses.replace(e, residual=parse("(w_tx - w*w_x)^2 + (2*w_t + w^2)*w_x^2"))
    rep = verify_entry(bad, FAST)
    assert rep.status == "FAIL"
    tri = rep.triage()
    assert tri["worst"]["terms"] and tri["worst"]["jet"]["w"] is not None
    assert any("residual" in r for r in tri["reasons"])


def test_quarantine_maps_status(catalog):
    e = get(catalog, "S2-04")
    assert e.quarantined
    rep = verify_entry(e, FAST)
    assert rep.status.startswith("QUARANTINED-")
    assert rep.repair["status"] == "PASS"


def test_constraint_violation_skips(catalog):
    rep = verify_entry(get(catalog, "S2-05"), VerifyConfig(params={"n": 1.0}))
    assert rep.status == "SKIPPED"
    assert rep.note.startswith("ConstraintViolation")


def test_param_override_changes_effective_params(catalog):
    rep = verify_entry(get(catalog, "S2-05"), VerifyConfig(seeds=(1,), params={"n": 3.0}))
    assert rep.params["n"] == 3.0 and rep.status == "PASS"


def test_residual_scaling(catalog):
    # a positive factor scales the residual and every term magnitude alike
    e = get(catalog, "S2-04")
    slots = {s.name: sample(s, 1, e.window, e.id) for s in e.slots}
    env = EvalEnv.at(0.9, 0.6, default_params(e), slots)
    w = eval_expr(e.solution, env)
    R, mags = residual_eval(e.residual, w, env)
    for c in (1e-3, 7.0, 1e3):
        Rc, mc = residual_eval(parse(f"{c!r}*({to_text(e.residual)})"), w, env)
        assert Rc == pytest.approx(c * R, rel=1e-14)
        assert mc == pytest.approx([c * m for m in mags], rel=1e-14)
    # verdicts hold under rescaling when the terms are not tiny
    cfg = VerifyConfig(seeds=(2,), fd_check=False)
    for eid, want in (("S2-03", "PASS"), ("S2-04", "QUARANTINED-FAIL")):
        entry = get(catalog, eid)
        for c in (1e-3, 1e3):
            scaled = dataclasses.replace(entry, residual=parse(f"{c!r}*({to_text(entry.residual)})"))
            assert verify_entry(scaled, cfg).status == want


def test_grid_and_window_overrides(catalog):
    cfg = VerifyConfig(seeds=(1,), grid=(3, 4), window=(0.7, 1.0, 0.4, 0.9))
    rep = verify_entry(get(catalog, "S2-01"), cfg)
    assert rep.seeds[0].n_points == 12
    assert rep.window == (0.7, 1.0, 0.4, 0.9)
    assert 0.7 <= rep.seeds[0].worst["t"] <= 1.0


def test_seed_independence_of_hand_proved_entries(catalog):
    for eid in ("S2-03", "S3-17"):
        rep = verify_entry(get(catalog, eid), VerifyConfig(seeds=(7, 8, 9)))
        assert rep.status == "PASS"


def test_report_and_csv_schema(catalog):
    reps, summary = verify_all(catalog, FAST, ids=["S2-01", "S2-04", "S2-05"])
    doc = report_document(reps, summary, FAST, catalog)
    assert doc["format"] == "exactpde-report/1"
    assert doc["catalog_checksum"] == catalog.checksum
    assert summary["entries"] == 3 and summary["counts"]["QUARANTINED-FAIL"] == 1
    r = doc["reports"][0]
    for key in ("id", "tier", "status", "tolerance", "max_rhat", "params", "window", "faults", "note", "seeds", "triage", "repair"):
        assert key in r
    for key in ("seed", "max_rhat", "worst", "fd_metric", "fd_ok", "faults", "points", "faulted_points", "passed"):
        assert key in r["seeds"][0]
    assert "seconds" not in r["seeds"][0]
    json.dumps(doc, allow_nan=False)
    rows = csv_rows(reps)
    assert rows[0] == ["id", "tier", "status", "max_rhat", "faults"]
    assert [row[0] for row in rows[1:]] == ["S2-01", "S2-04", "S2-05"]


def test_summary_counts():
    assert summarize([])["entries"] == 0
