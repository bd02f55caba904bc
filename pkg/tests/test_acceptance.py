"""Acceptance criteria 1-8, one recorded pass/fail line each."""

import io
import json
import math
import time

import numpy as np
import pytest
from scipy import integrate

from conftest import ACCEPTANCE
from exactpde import special as S
from exactpde.catalog import get, parse_constraints
from exactpde.cli import run
from exactpde.expr import Root, integral_depth, parse, to_text, walk
from exactpde.quad import DEFAULT as DEFAULT_QUAD
from exactpde.verifier import VerifyConfig, report_document, verify_all, verify_entry

TOL_HAND = 1e-9
TOL_A, TOL_B, TOL_NESTED, TOL_CD = 1e-7, 1e-6, 1e-5, 1e-5
TOL_ROOT = 1e-12
TOL_FD = 1e-5
TIME_HAND, TIME_A, TIME_B, TIME_ALL = 1.0, 0.1, 5.0, 120.0
PASS_TARGET = 0.75


def record(n: int, ok: bool, text: str) -> None:
    ACCEPTANCE[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}"


@pytest.fixture(scope="module")
def full_run(catalog):
    cfg = VerifyConfig()
    start = time.perf_counter()
    reports, summary = verify_all(catalog, cfg)
    elapsed = time.perf_counter() - start
    return {"cfg": cfg, "reports": {r.id: r for r in reports}, "summary": summary, "elapsed": elapsed,
            "doc": report_document(reports, summary, cfg, catalog)}


def _tier_rows(catalog, full_run, tiers):
    """(id, max r-hat, tolerance, passed, worst seed time) for checked readings of the tiers.

    Quarantined entries are judged through their corrected reading.
    """
    rows = []
    for e in catalog:
        rep = full_run["reports"][e.id]
        if e.quarantined:
            if rep.repair is None:
                continue
            fixed = e.repaired()
            if fixed.tier not in tiers:
                continue
            tol = full_run["cfg"].tolerance(fixed)
            rows.append((e.id + "*", rep.repair["max_rhat"], tol, rep.repair["status"] == "PASS", 0.0))
        elif e.tier in tiers:
            rows.append((e.id, rep.max_rhat, rep.tolerance, rep.status == "PASS", max(s.seconds for s in rep.seeds)))
    return rows


# ------------------------------------------------------------------ 1


def test_criterion_1_hand_proved_entries(catalog):
    worst, slowest, ok = 0.0, 0.0, True
    for eid in ("S2-03", "S3-17"):
        for grid in ((5, 5), (9, 9)):
            start = time.perf_counter()
            rep = verify_entry(get(catalog, eid), VerifyConfig(grid=grid, seeds=(1, 2, 3)))
            dt = time.perf_counter() - start
            worst, slowest = max(worst, rep.max_rhat), max(slowest, dt)
            ok &= rep.status == "PASS" and rep.max_rhat <= TOL_HAND and dt < TIME_HAND
    record(1, ok, f"S2-03, S3-17 on 5x5 and 9x9, seeds 1,2,3: max r̂ {worst:.2e} (≤ {TOL_HAND:g}), "
                  f"slowest run {slowest:.3f} s (< {TIME_HAND:g} s)")
    assert ok


# ------------------------------------------------------------------ 2


def test_criterion_2_tier_a(catalog, full_run):
    rows = _tier_rows(catalog, full_run, "A")
    worst = max(r[1] for r in rows)
    slow = max(r[4] for r in rows)
    ok = all(r[3] and r[1] <= TOL_A for r in rows) and slow < TIME_A
    record(2, ok, f"tier A, {len(rows)} entries: max r̂ {worst:.2e} (≤ {TOL_A:g}), slowest seed {slow:.3f} s (< {TIME_A:g} s)")
    assert ok


# ------------------------------------------------------------------ 3


def test_criterion_3_tier_b(catalog, full_run):
    assert DEFAULT_QUAD.abs_tol == 1e-11 and DEFAULT_QUAD.rel_tol == 1e-11
    rows = _tier_rows(catalog, full_run, "B")
    ok = True
    for eid, m, tol, passed, sec in rows:
        e = get(catalog, eid.rstrip("*"))
        sol = e.repaired().solution if eid.endswith("*") else e.solution
        want = TOL_NESTED if integral_depth(sol) >= 2 else TOL_B
        ok &= passed and m <= want and tol == want and sec < TIME_B
    flat = max(r[1] for r in rows if r[2] == TOL_B)
    nested = [r for r in rows if r[2] == TOL_NESTED]
    slow = max(r[4] for r in rows)
    record(3, ok, f"tier B, {len(rows)} readings (quadrature tol 1e-11): max r̂ {flat:.2e} (≤ {TOL_B:g}); "
                  f"{len(nested)} nested: max r̂ {max(r[1] for r in nested):.2e} (≤ {TOL_NESTED:g}); "
                  f"slowest seed {slow:.2f} s (< {TIME_B:g} s)")
    assert ok


# ------------------------------------------------------------------ 4


def test_criterion_4_tier_cd(catalog, full_run):
    rows = _tier_rows(catalog, full_run, "CD")
    ok = all(r[3] and r[1] <= TOL_CD for r in rows)
    worst_root, n_root = 0.0, 0
    for e in catalog:
        if any(isinstance(n, Root) for n in walk(e.solution)):
            n_root += 1
            for s in full_run["reports"][e.id].seeds:
                ok &= s.root_residual is not None and s.root_residual <= TOL_ROOT
                worst_root = max(worst_root, s.root_residual or 0.0)
    record(4, ok, f"tier C/D, {len(rows)} readings: max r̂ {max(r[1] for r in rows):.2e} (≤ {TOL_CD:g}); "
                  f"root equations in {n_root} entries satisfied to {worst_root:.2e} (≤ {TOL_ROOT:g})")
    assert ok


# ------------------------------------------------------------------ 5


def test_criterion_5_fd_oracle(full_run):
    seeds = [s for r in full_run["reports"].values() for s in r.seeds]
    ok = all(s.fd_ok and s.fd_checked == 10 and s.fd_metric <= TOL_FD for s in seeds)
    worst = max(s.fd_metric for s in seeds)
    record(5, ok, f"jets vs fd_partials on {len(full_run['reports'])} entries x {len(seeds) // len(full_run['reports'])} "
                  f"seeds x 10 points: max relative error {worst:.2e} (≤ {TOL_FD:g})")
    assert ok


# ------------------------------------------------------------------ 6


def _erf_series(x, terms=60):
    return 2 / math.sqrt(math.pi) * sum((-1) ** n * x ** (2 * n + 1) / (math.factorial(n) * (2 * n + 1)) for n in range(terms))


def test_criterion_6_special_functions():
    checks = []
    for branch, z in ((0, np.logspace(-10, 10, 50)), (0, -np.logspace(-10, 0, 50) / math.e),
                      (-1, -np.logspace(-10, 0, 50) / math.e)):
        w = S.lambertw(z, branch)
        checks.append(np.max(np.abs(w * np.exp(w) - z) / np.maximum(1, np.abs(z))) <= 1e-14)
    e1 = S.erf(1.0)
    checks.append(abs(e1 - _erf_series(1.0)) <= 1e-12 and abs(e1 - 0.8427007929) <= 5e-11)
    for z in (0.5, 1.0, 2.0):
        checks.append(abs(S.kummer_m(1.0, 2.0, z) - (math.exp(z) - 1) / z) <= 1e-12)
    checks.append(abs(S.whittaker_m(0.0, 0.5, 2.0) - 2 * math.sinh(1.0)) <= 1e-10)
    for z in (0.5, 1.0, 2.0, 5.0):
        ref, _ = integrate.quad(lambda s: math.exp(-z * s) / s, 1.0, math.inf, epsabs=1e-14, epsrel=1e-14)
        checks.append(abs(S.expint1(z) - ref) <= 1e-10)
    ok = all(bool(c) for c in checks)
    record(6, ok, f"special functions: {sum(map(bool, checks))}/{len(checks)} checks "
                  "(Lambert W 3 grids x 50, erf(1), kummer_m x3, whittaker_m, expint1 x4)")
    assert ok


# ------------------------------------------------------------------ 7


def test_criterion_7_parser_round_trip(catalog):
    n, bad = 0, []
    for e in catalog:
        names = set(e.param_names)
        exprs = [e.residual, e.solution]
        fixed = e.repaired()
        if fixed is not None:
            exprs += [fixed.residual, fixed.solution]
        exprs += [side for c in e.constraints for side in (c.lhs, c.rhs)]
        for ex in exprs:
            n += 1
            text = to_text(ex)
            back = parse(text, names)
            if back != ex or to_text(back) != text:
                bad.append(e.id)
    ok = not bad
    record(7, ok, f"parser round trip: {n - len(bad)}/{n} catalogue expressions")
    assert ok


# ------------------------------------------------------------------ 8


def test_criterion_8_whole_catalogue(catalog, full_run, tmp_path):
    reports = full_run["reports"]
    summary = full_run["summary"]
    # an independent second run through the command line must reproduce the report bytes
    path = tmp_path / "report.json"
    code = run(["verify-all", "--report", str(path)], out=io.StringIO(), err=io.StringIO())
    first = json.dumps(full_run["doc"], indent=1, ensure_ascii=False) + "\n"
    deterministic = path.read_text(encoding="utf-8") == first
    failing = [r for r in reports.values() if r.status in ("FAIL", "QUARANTINED-FAIL")]
    triaged = all(r.triage() and r.triage()["worst"].get("terms") is not None for r in failing
                  if r.status == "FAIL")
    classified = all(
        any(k in catalog_note for k in ("suspected source typo", "transcription defect"))
        for catalog_note in (get(catalog, r.id).note for r in failing)
    )
    frac = summary["pass_fraction"]
    ok = (full_run["elapsed"] < TIME_ALL and deterministic and code == 0 and triaged and classified
          and frac >= PASS_TARGET)
    counts = ", ".join(f"{k} {v}" for k, v in summary["counts"].items() if v)
    record(8, ok, f"verify-all: {full_run['elapsed']:.1f} s (< {TIME_ALL:g} s), byte-identical rerun {deterministic}, "
                  f"{counts}; PASS {frac:.1%} (≥ {PASS_TARGET:.0%}); {len(failing)} failures all triaged and classified")
    assert ok
