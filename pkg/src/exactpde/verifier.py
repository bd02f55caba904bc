"""Grid verification of catalogue entries.

For every seed the arbitrary-function slots are sampled, the solution's
jet is evaluated on an ``n_t x n_x`` grid, and the residual is formed from
the jet.  The normalized residual

    r = |R| / (1 + sum of |top-level additive terms of R|)

must stay below the tier tolerance.  Independently, finite differences of
value-only evaluations must agree with the jets at random points, so a bug
that corrupts jets and residual alike cannot pass unnoticed.
"""

from __future__ import annotations

import math
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from .catalog import Catalog, CatalogEntry, check_params, default_params, load
from .errors import (
    BranchJump,
    ConstraintViolation,
    EvaluationError,
    ExactPDEError,
    SamplingExhausted,
)
from .evaluate import EvalEnv, eval_expr, residual_eval
from .expr import Root, integral_depth, walk
from .funcspace import sample
from .jet import Jet
from .quad import QuadConfig

TIER_TOL = {"A": 1e-7, "B": 1e-6, "C": 1e-5, "D": 1e-5}
NESTED_TOL = 1e-5
FD_RETRY = 10.0  # step multiplier for the second finite-difference attempt
STATUSES = ("PASS", "FAIL", "QUARANTINED-PASS", "QUARANTINED-FAIL", "SKIPPED")
_COMPONENTS = ("w", "w_t", "w_x", "w_tt", "w_tx", "w_xx")


@dataclass(frozen=True)
class VerifyConfig:
    grid: tuple[int, int] = (5, 5)
    seeds: tuple[int, ...] = (1, 2, 3)
    tol: float | None = None  # overrides the tier tolerance when set
    fd_tol: float = 1e-5
    fd_points: int = 10
    fd_step: float = 1e-4  # fraction of the window span
    root_tol: float = 1e-12
    fault_cap: float = 0.2
    quad: QuadConfig = QuadConfig()
    params: Mapping[str, float] = field(default_factory=dict)
    window: tuple[float, float, float, float] | None = None
    fd_check: bool = True
    check_repairs: bool = True

    def __post_init__(self):
        if len(self.grid) != 2 or min(self.grid) < 2:
            raise ValueError("grid must be at least 2x2")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if not self.seeds:
            raise ValueError("at least one seed is needed")

    def tolerance(self, entry: CatalogEntry) -> float:
        if self.tol is not None:
            return self.tol
        if entry.tier == "B" and integral_depth(entry.solution) >= 2:
            return NESTED_TOL
        return TIER_TOL[entry.tier]

    def as_dict(self) -> dict:
        return {
            "grid": f"{self.grid[0]}x{self.grid[1]}",
            "seeds": list(self.seeds),
            "tol": self.tol,
            "fd_tol": self.fd_tol,
            "fd_points": self.fd_points,
            "quad_abs_tol": self.quad.abs_tol,
            "quad_rel_tol": self.quad.rel_tol,
            "params": dict(sorted(self.params.items())),
            "window": None if self.window is None else list(self.window),
        }


@dataclass
class SeedResult:
    seed: int
    max_rhat: float = math.nan
    worst: dict | None = None
    fd_metric: float = math.nan
    fd_ok: bool = False
    fd_checked: int = 0
    root_residual: float | None = None
    faults: dict = field(default_factory=dict)
    fault_notes: list = field(default_factory=list)
    n_points: int = 0
    n_faulted: int = 0
    hard_fault: bool = False
    passed: bool = False
    seconds: float = 0.0

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "seed": self.seed,
            "max_rhat": _num(self.max_rhat),
            "worst": self.worst,
            "fd_metric": _num(self.fd_metric),
            "fd_ok": self.fd_ok,
            "fd_points_checked": self.fd_checked,
            "root_residual": _num(self.root_residual),
            "faults": dict(sorted(self.faults.items())),
            "fault_notes": self.fault_notes[:3],
            "points": self.n_points,
            "faulted_points": self.n_faulted,
            "passed": self.passed,
        }
        if timing:
            d["seconds"] = round(self.seconds, 4)
        return d


@dataclass
class VerificationReport:
    id: str
    tier: str
    status: str
    tolerance: float
    seeds: list[SeedResult] = field(default_factory=list)
    note: str = ""
    params: dict = field(default_factory=dict)
    window: tuple = ()
    repair: dict | None = None  # outcome of the corrected reading of a quarantined entry

    @property
    def max_rhat(self) -> float:
        vals = [s.max_rhat for s in self.seeds if not math.isnan(s.max_rhat)]
        return max(vals) if vals else math.nan

    @property
    def seconds(self) -> float:
        return sum(s.seconds for s in self.seeds)

    def fault_counts(self) -> dict:
        out: dict = {}
        for s in self.seeds:
            for k, v in s.faults.items():
                out[k] = out.get(k, 0) + v
        return dict(sorted(out.items()))

    def triage(self) -> dict | None:
        """Worst point and term magnitudes of the worst failing seed."""
        if self.status not in ("FAIL", "QUARANTINED-FAIL"):
            return None
        failing = [s for s in self.seeds if not s.passed] or self.seeds
        worst = max(failing, key=lambda s: -1.0 if math.isnan(s.max_rhat) else s.max_rhat)
        return {
            "seed": worst.seed,
            "worst": worst.worst,
            "max_rhat": _num(worst.max_rhat),
            "fd_metric": _num(worst.fd_metric),
            "faults": dict(sorted(worst.faults.items())),
            "fault_notes": worst.fault_notes[:3],
            "reasons": _reasons(worst, self.tolerance),
        }

    def summary_line(self) -> str:
        m = self.max_rhat
        shown = "n/a" if math.isnan(m) else f"{m:.3e}"
        rel = "≤" if (not math.isnan(m) and m <= self.tolerance) else ">"
        return f"{self.id} {self.status} max r̂ {shown} {rel} {self.tolerance:g}"

    def as_dict(self, timing: bool = False) -> dict:
        return {
            "id": self.id,
            "tier": self.tier,
            "status": self.status,
            "tolerance": self.tolerance,
            "max_rhat": _num(self.max_rhat),
            "params": dict(sorted(self.params.items())),
            "window": list(self.window),
            "faults": self.fault_counts(),
            "note": self.note,
            "seeds": [s.as_dict(timing) for s in self.seeds],
            "triage": self.triage(),
            "repair": self.repair,
        }


def _num(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


def _reasons(s: SeedResult, tol: float) -> list[str]:
    out = []
    if math.isnan(s.max_rhat):
        out.append("no evaluable grid point")
    elif s.max_rhat > tol:
        out.append(f"residual {s.max_rhat:.3e} above tolerance {tol:g}")
    if not s.fd_ok:
        out.append(f"jets disagree with finite differences (metric {s.fd_metric:.3e})")
    if s.hard_fault:
        out.append("hard fault: " + ", ".join(k for k in s.faults if k in _HARD))
    if s.n_points and s.n_faulted / s.n_points > 0.2:
        out.append(f"{s.n_faulted}/{s.n_points} grid points faulted")
    if s.root_residual is not None and not s.root_residual <= 1e-12:
        out.append(f"root residual {s.root_residual:.3e} above 1e-12")
    return out


_HARD = {"QuadratureFailure", "ConvergenceFailure", "BranchJump", "SamplingExhausted", "InternalError"}


# ------------------------------------------------------------ finite differences


def fd_partials(f: Callable, t, x, ht: float, hx: float | None = None) -> Jet:
    """Central-difference estimate of the 2-jet of ``f`` at ``(t, x)``.

    ``f`` maps arrays ``t, x`` to values and is called once on a 13-point
    stencil per point: the centre, the four axis points and the two
    diagonal points at steps ``h`` and ``h/2``.  The mixed partial uses

        f_tx ~ (f(a,b) + f(-a,-b) - f(a,0) - f(-a,0) - f(0,b) - f(0,-b) + 2 f) / (2ab)

    and every component is Richardson-combined over the two steps, so the
    truncation error is fourth order.  ``t`` and ``x`` may be arrays of the
    same shape; the stencil goes on a trailing axis.
    """
    hx = ht if hx is None else hx
    a, b = ht, hx
    pts_t = np.array([0, a, -a, a / 2, -a / 2, 0, 0, 0, 0, a, -a, a / 2, -a / 2])
    pts_x = np.array([0, 0, 0, 0, 0, b, -b, b / 2, -b / 2, b, -b, b / 2, -b / 2])
    tt = np.asarray(t, float)[..., None] + pts_t
    xx = np.asarray(x, float)[..., None] + pts_x
    v = np.moveaxis(np.broadcast_to(np.asarray(f(tt, xx), float), np.broadcast_shapes(tt.shape, xx.shape)), -1, 0)
    f0 = v[0]

    def rich(coarse, fine):
        return (4 * fine - coarse) / 3

    def first(p, m, h):
        return (p - m) / (2 * h)

    def second(p, m, h):
        return (p - 2 * f0 + m) / h**2

    dt = rich(first(v[1], v[2], a), first(v[3], v[4], a / 2))
    dx = rich(first(v[5], v[6], b), first(v[7], v[8], b / 2))
    dtt = rich(second(v[1], v[2], a), second(v[3], v[4], a / 2))
    dxx = rich(second(v[5], v[6], b), second(v[7], v[8], b / 2))
    mix_h = (v[9] + v[10] - v[1] - v[2] - v[5] - v[6] + 2 * f0) / (2 * a * b)
    mix_h2 = (v[11] + v[12] - v[3] - v[4] - v[7] - v[8] + 2 * f0) / (2 * (a / 2) * (b / 2))
    return Jet(f0, (dt, dx), (dtt, rich(mix_h, mix_h2), dxx))


# --------------------------------------------------------------------- helpers


def _rng(seed: int, entry_id: str, salt: str) -> np.random.Generator:
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, zlib.crc32(entry_id.encode()), zlib.crc32(salt.encode())])


def _env(entry: CatalogEntry, t, x, params, slots, cfg: VerifyConfig, jets=True, stats=None) -> EvalEnv:
    return EvalEnv.at(
        t, x, params, slots, jets=jets, quad=cfg.quad, band=entry.band if entry.superposition else None, stats=stats
    )


def _has_root(entry: CatalogEntry) -> bool:
    return any(isinstance(n, Root) for n in walk(entry.solution))


def _components(j: Jet) -> np.ndarray:
    return np.stack([np.broadcast_to(np.asarray(c, float), np.shape(j.v)) for c in (j.v, j.d_t, j.d_x, j.d_tt, j.d_tx, j.d_xx)])


def _fault_name(err: Exception) -> str:
    return type(err).__name__ if isinstance(err, ExactPDEError) else "InternalError"


def _is_hard(err: Exception) -> bool:
    return not (isinstance(err, EvaluationError) and err.window_fault)


def _evaluate(entry: CatalogEntry, t, x, params, slots, cfg, stats):
    env = _env(entry, t, x, params, slots, cfg, stats=stats)
    w = eval_expr(entry.solution, env)
    R, mags = residual_eval(entry.residual, w, env)
    denom = 1.0 + sum(np.broadcast_to(m, np.shape(R)) for m in mags)
    return w, np.abs(R) / denom, R, mags


# ----------------------------------------------------------------------- seeds


def _verify_seed(entry: CatalogEntry, seed: int, params: dict, window, cfg: VerifyConfig, tol: float) -> SeedResult:
    res = SeedResult(seed)
    start = time.perf_counter()
    try:
        slots = {s.name: sample(s, seed, window, entry.id) for s in entry.slots}
    except SamplingExhausted as exc:
        res.faults["SamplingExhausted"] = 1
        res.fault_notes.append(str(exc))
        res.hard_fault = True
        res.seconds = time.perf_counter() - start
        return res

    nt, nx = cfg.grid
    T, X = np.meshgrid(np.linspace(window[0], window[1], nt), np.linspace(window[2], window[3], nx), indexing="ij")
    res.n_points = nt * nx
    stats: dict = {}
    ok_mask = np.ones(T.shape, bool)
    comps = np.full((6,) + T.shape, np.nan)
    rhat = np.full(T.shape, np.nan)
    Rv = np.full(T.shape, np.nan)
    terms: dict = {}

    def record(err: Exception):
        name = _fault_name(err)
        res.faults[name] = res.faults.get(name, 0) + 1
        if len(res.fault_notes) < 3:
            res.fault_notes.append(f"{name}: {err}")
        if _is_hard(err):
            res.hard_fault = True

    try:
        w, r, R, mags = _evaluate(entry, T, X, params, slots, cfg, stats)
        comps[:] = _components(w)
        rhat[:] = r
        Rv[:] = R
        for (i, j) in np.ndindex(T.shape):
            terms[(i, j)] = [float(np.broadcast_to(m, T.shape)[i, j]) for m in mags]
    except Exception:  # one bad point spoils the batch: classify point by point
        for (i, j) in np.ndindex(T.shape):
            try:
                w, r, R, mags = _evaluate(entry, float(T[i, j]), float(X[i, j]), params, slots, cfg, stats)
                comps[:, i, j] = _components(w)
                rhat[i, j] = float(r)
                Rv[i, j] = float(R)
                terms[(i, j)] = [float(m) for m in mags]
            except Exception as err:  # noqa: BLE001 - folded into the report
                ok_mask[i, j] = False
                record(err)
    res.n_faulted = int((~ok_mask).sum())

    if ok_mask.any():
        masked = np.where(ok_mask, rhat, -np.inf)
        i, j = np.unravel_index(int(np.argmax(masked)), T.shape)
        res.max_rhat = float(rhat[i, j])
        res.worst = {
            "t": float(T[i, j]),
            "x": float(X[i, j]),
            "rhat": _num(rhat[i, j]),
            "residual": _num(Rv[i, j]),
            "terms": [_num(v) for v in terms.get((i, j), [])],
            "jet": {k: _num(comps[n, i, j]) for n, k in enumerate(_COMPONENTS)},
        }
        if not np.all(np.isfinite(rhat[ok_mask])):
            res.max_rhat = math.inf

    if _has_root(entry):
        res.root_residual = float(stats.get("root_residual", 0.0))
        _branch_check(comps, ok_mask, T, X, record)

    if cfg.fd_check:
        _fd_check(entry, seed, params, slots, window, cfg, res)
    else:
        res.fd_ok, res.fd_metric = True, 0.0

    res.passed = bool(
        not math.isnan(res.max_rhat)
        and res.max_rhat <= tol
        and res.fd_ok
        and not res.hard_fault
        and res.n_faulted <= cfg.fault_cap * res.n_points
        and (res.root_residual is None or res.root_residual <= cfg.root_tol)
    )
    res.seconds = time.perf_counter() - start
    return res


def _branch_check(comps, ok_mask, T, X, record) -> None:
    """Flag jumps of w between neighbouring grid points that its slope cannot explain."""
    w, wt, wx = comps[0], comps[1], comps[2]
    for axis, step, slope in ((0, T[1, 0] - T[0, 0], wt), (1, X[0, 1] - X[0, 0], wx)):
        a = [slice(None)] * 2
        b = [slice(None)] * 2
        a[axis], b[axis] = slice(None, -1), slice(1, None)
        a, b = tuple(a), tuple(b)
        both = ok_mask[a] & ok_mask[b]
        dw = np.abs(w[b] - w[a])
        s = np.maximum(np.abs(slope[a]), np.abs(slope[b]))
        # generous: a smooth branch moves by about step*slope
        bad = both & (dw > abs(step) * (10 * s + 1))
        if np.any(bad):
            record(BranchJump(f"{int(bad.sum())} neighbour pair(s) jump along {'tx'[axis]}"))
            return


def _fd_check(entry, seed, params, slots, window, cfg: VerifyConfig, res: SeedResult) -> None:
    rng = _rng(seed, entry.id, "fd")
    span_t, span_x = window[1] - window[0], window[3] - window[2]
    ht, hx = cfg.fd_step * span_t, cfg.fd_step * span_x
    # keep stencils inside the window, also at the retry step
    m_t, m_x = FD_RETRY * ht, FD_RETRY * hx
    tp = rng.uniform(window[0] + m_t, window[1] - m_t, cfg.fd_points)
    xp = rng.uniform(window[2] + m_x, window[3] - m_x, cfg.fd_points)

    def f(tt, xx):
        return eval_expr(entry.solution, _env(entry, tt, xx, params, slots, cfg, jets=False)).v

    def errors(t, x):
        J = _components(eval_expr(entry.solution, _env(entry, t, x, params, slots, cfg)))
        D = _components(fd_partials(f, t, x, ht, hx))
        err = np.max(np.abs(J - D) / (np.abs(J) + 1.0), axis=0)
        if np.any(err > cfg.fd_tol):
            # noise in ill-conditioned values grows like 1/h^2; a jet error does not shrink with h
            D = _components(fd_partials(f, t, x, FD_RETRY * ht, FD_RETRY * hx))
            err = np.minimum(err, np.max(np.abs(J - D) / (np.abs(J) + 1.0), axis=0))
        return err

    try:
        errs = list(np.atleast_1d(errors(tp, xp)))
    except Exception:  # noqa: BLE001 - retry point by point, skipping singular ones
        errs = []
        for t, x in zip(tp, xp):
            try:
                errs.append(float(errors(float(t), float(x))))
            except Exception:  # noqa: BLE001
                continue
    errs = [e if math.isfinite(e) else math.inf for e in map(float, errs)]
    res.fd_checked = len(errs)
    res.fd_metric = max(errs) if errs else math.nan
    res.fd_ok = len(errs) >= max(1, cfg.fd_points // 2) and res.fd_metric <= cfg.fd_tol


# ----------------------------------------------------------------------- entry


def effective_params(entry: CatalogEntry, overrides: Mapping[str, float]) -> dict:
    """Catalogue defaults with the overrides that name this entry's parameters."""
    p = default_params(entry)
    p.update({k: float(v) for k, v in overrides.items() if k in p})
    return p


def verify_entry(entry: CatalogEntry, cfg: VerifyConfig = VerifyConfig()) -> VerificationReport:
    """Verify one entry over all seeds; faults are folded into the report."""
    tol = cfg.tolerance(entry)
    params = effective_params(entry, cfg.params)
    window = tuple(cfg.window or entry.window)
    rep = VerificationReport(entry.id, entry.tier, "FAIL", tol, note=entry.note, params=params, window=window)
    try:
        check_params(entry, params)
    except ConstraintViolation as exc:
        rep.status = "SKIPPED"
        rep.note = f"ConstraintViolation: {exc}"
        return rep
    for seed in cfg.seeds:
        try:
            rep.seeds.append(_verify_seed(entry, seed, params, window, cfg, tol))
        except Exception as exc:  # noqa: BLE001 - totality
            s = SeedResult(seed, hard_fault=True)
            s.faults["InternalError"] = 1
            s.fault_notes.append(f"{type(exc).__name__}: {exc}")
            rep.seeds.append(s)
    passed = all(s.passed for s in rep.seeds)
    if entry.quarantined:
        rep.status = "QUARANTINED-PASS" if passed else "QUARANTINED-FAIL"
        if cfg.check_repairs and entry.repair is not None:
            rep.repair = _verify_repair(entry, cfg)
    else:
        rep.status = "PASS" if passed else "FAIL"
    return rep


def _verify_repair(entry: CatalogEntry, cfg: VerifyConfig) -> dict:
    fixed = verify_entry(entry.repaired(), cfg)
    return {
        "status": fixed.status,
        "tier": fixed.tier,
        "max_rhat": _num(fixed.max_rhat),
    }


def _verify_by_id(args):
    path, entry_id, cfg = args
    from .catalog import get

    cat = load(path)
    return verify_entry(get(cat, entry_id), cfg)


def verify_all(
    catalog: Catalog,
    cfg: VerifyConfig = VerifyConfig(),
    jobs: int = 1,
    ids: Sequence[str] | None = None,
    catalog_path: str | None = None,
    progress: Callable[[VerificationReport], None] | None = None,
):
    """Verify every entry (or ``ids``); returns ``(reports, summary)``."""
    entries = [e for e in catalog if ids is None or e.id in ids]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = []
            for rep in pool.map(_verify_by_id, [(catalog_path, e.id, cfg) for e in entries]):
                reports.append(rep)
                if progress:
                    progress(rep)
    else:
        reports = []
        for e in entries:
            rep = verify_entry(e, cfg)
            reports.append(rep)
            if progress:
                progress(rep)
    return reports, summarize(reports)


def summarize(reports: Sequence[VerificationReport]) -> dict:
    counts = {s: 0 for s in STATUSES}
    for r in reports:
        counts[r.status] += 1
    n = len(reports)
    return {
        "entries": n,
        "counts": counts,
        "pass_fraction": round(counts["PASS"] / n, 4) if n else None,
        "failed": [r.id for r in reports if r.status == "FAIL"],
    }


def report_document(reports, summary, cfg: VerifyConfig, catalog: Catalog | None = None, timing: bool = False) -> dict:
    return {
        "format": "exactpde-report/1",
        "catalog_checksum": None if catalog is None else catalog.checksum,
        "config": cfg.as_dict(),
        "summary": summary,
        "reports": [r.as_dict(timing) for r in reports],
    }


def csv_rows(reports) -> list[list[str]]:
    rows = [["id", "tier", "status", "max_rhat", "faults"]]
    for r in reports:
        m = r.max_rhat
        faults = ";".join(f"{k}={v}" for k, v in r.fault_counts().items())
        rows.append([r.id, r.tier, r.status, "" if math.isnan(m) else f"{m:.6e}", faults])
    return rows


__all__ = [
    "VerifyConfig",
    "VerificationReport",
    "SeedResult",
    "fd_partials",
    "verify_entry",
    "verify_all",
    "summarize",
    "report_document",
    "csv_rows",
    "TIER_TOL",
]
