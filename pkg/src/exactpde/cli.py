"""Command-line front end: list, show, verify, verify-all, export-catalog.

Exit codes: 2 for usage or configuration errors (including parameter
constraint violations), 1 when a non-quarantined entry FAILs, 0 otherwise.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .catalog import Catalog, CatalogEntry, check_params, default_path, get, load
from .errors import ConstraintViolation, NotFound, SchemaError
from .expr import to_text
from .quad import QuadConfig
from .verifier import VerifyConfig, csv_rows, effective_params, report_document, verify_all, verify_entry

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ parsing


def _seeds(text: str) -> tuple[int, ...]:
    try:
        seeds = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated integers, got {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("at least one seed is needed")
    return seeds


def _grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    try:
        n, m = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 5x5, got {text!r}") from None
    if n < 2 or m < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per axis")
    return n, m


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _param(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"parameters look like name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {name!r}: {value!r} is not a number") from None


def _window(text: str) -> tuple[float, float, float, float]:
    try:
        w = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be tlo,thi,xlo,xhi, got {text!r}") from None
    if len(w) != 4 or not (w[0] < w[1] and w[2] < w[3]):
        raise argparse.ArgumentTypeError(f"window must be tlo,thi,xlo,xhi with lo < hi, got {text!r}")
    return w  # type: ignore[return-value]


def _jobs(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"jobs must be an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("jobs must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", metavar="PATH", help="catalogue JSON file (default: the embedded one)")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--seed", type=_seeds, metavar="INT,INT,...", help="sampling seeds (default 1,2,3)")
    run.add_argument("--grid", type=_grid, metavar="NxM", help="grid points in t and x (default 5x5)")
    run.add_argument("--tol", type=_positive, help="override the tier tolerance on r-hat")
    run.add_argument("--param", type=_param, action="append", default=[], metavar="NAME=VALUE",
                     help="override a parameter default (repeatable)")
    run.add_argument("--window", type=_window, metavar="TLO,THI,XLO,XHI", help="override the entry window")
    run.add_argument("--report", metavar="PATH", help="write the JSON report here")
    run.add_argument("--csv", metavar="PATH", help="write a CSV summary here")
    run.add_argument("--jobs", type=_jobs, default=1, metavar="N", help="worker processes (default 1)")
    run.add_argument("--quad-tol", type=_positive, metavar="TOL",
                     help="absolute and relative quadrature tolerance (default 1e-11)")
    run.add_argument("--max-subdivisions", type=_jobs, metavar="N", help="quadrature subdivision cap (default 2000)")
    run.add_argument("--timing", action="store_true", help="include timings in the JSON report (not deterministic)")

    p = argparse.ArgumentParser(prog="exactpde", description="Verify exact solutions of nonlinear second-order PDEs.")
    p.add_argument("--version", action="version", version=f"exactpde {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("list", parents=[common], help="list catalogue entries")
    sp = sub.add_parser("show", parents=[common], help="print one entry")
    sp.add_argument("id")
    sp = sub.add_parser("verify", parents=[common, run], help="verify one entry")
    sp.add_argument("id")
    sp = sub.add_parser("verify-all", parents=[common, run], help="verify the whole catalogue")
    sp = sub.add_parser("export-catalog", parents=[common], help="write the catalogue file")
    sp.add_argument("output", nargs="?", default="-", help="destination path (default: stdout)")
    return p


# ------------------------------------------------------------------ helpers


def _load(args) -> Catalog:
    return load(args.catalog) if args.catalog else load()


def _config(args) -> VerifyConfig:
    quad = QuadConfig()
    if args.quad_tol is not None:
        quad = QuadConfig(abs_tol=args.quad_tol, rel_tol=args.quad_tol, max_subdivisions=quad.max_subdivisions)
    if args.max_subdivisions is not None:
        quad = QuadConfig(abs_tol=quad.abs_tol, rel_tol=quad.rel_tol, max_subdivisions=args.max_subdivisions)
    kw = {"quad": quad, "params": dict(args.param)}
    if args.seed is not None:
        kw["seeds"] = args.seed
    if args.grid is not None:
        kw["grid"] = args.grid
    if args.tol is not None:
        kw["tol"] = args.tol
    if args.window is not None:
        kw["window"] = args.window
    return VerifyConfig(**kw)


def _write_outputs(args, reports, summary, cfg, catalog) -> None:
    if args.report:
        doc = report_document(reports, summary, cfg, catalog, timing=args.timing)
        text = json.dumps(doc, indent=1, sort_keys=False, ensure_ascii=False) + "\n"
        Path(args.report).write_text(text, encoding="utf-8")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh, lineterminator="\n").writerows(csv_rows(reports))


def _print_report(rep, out) -> None:
    print(rep.summary_line(), file=out)
    if rep.status == "SKIPPED":
        print(f"  {rep.note}", file=out)
    tri = rep.triage()
    if tri is not None and rep.status == "FAIL":
        w = tri["worst"] or {}
        where = f" at t={w['t']:.6g}, x={w['x']:.6g}" if "t" in w else ""
        print(f"  triage (seed {tri['seed']}{where}): {'; '.join(tri['reasons'])}", file=out)
    if rep.repair is not None:
        shown = "n/a" if rep.repair["max_rhat"] is None else f"{rep.repair['max_rhat']:.3e}"
        print(f"  corrected reading: {rep.repair['status']} max r̂ {shown}", file=out)


def _exit_code(reports) -> int:
    return EXIT_FAIL if any(r.status == "FAIL" for r in reports) else EXIT_OK


# ------------------------------------------------------------------ commands


def cmd_list(args, out) -> int:
    cat = _load(args)
    rows = [(e.id, e.source_label, e.tier, "yes" if e.quarantined else "") for e in cat]
    wid = max(len(r[1]) for r in rows) if rows else 0
    wid = min(wid, 12)
    print(f"{'id':<6} {'source':<{wid}} tier quarantined", file=out)
    for eid, label, tier, q in rows:
        print(f"{eid:<6} {label[:wid]:<{wid}} {tier:<4} {q}", file=out)
    print(f"{len(rows)} entries", file=out)
    return EXIT_OK


def _show(e: CatalogEntry, out) -> None:
    print(f"{e.id}  ({e.source_label})  tier {e.tier}{'  QUARANTINED' if e.quarantined else ''}", file=out)
    print(f"residual: {to_text(e.residual)} = 0", file=out)
    print(f"solution: w = {to_text(e.solution)}", file=out)
    if e.params:
        print("params:", file=out)
        for p in e.params:
            extra = f"  [{p.constraint}]" if p.constraint else ""
            print(f"  {p.name} = {p.default:g}{extra}", file=out)
    print("window: t in [{:g}, {:g}], x in [{:g}, {:g}]".format(*e.window), file=out)
    if e.slots:
        print("slots: " + ", ".join(s.name for s in e.slots), file=out)
    if e.note:
        print(f"note: {e.note}", file=out)
    fixed = e.repaired()
    if fixed is not None:
        if e.repair.get("residual"):
            print(f"corrected residual: {to_text(fixed.residual)} = 0", file=out)
        if e.repair.get("solution"):
            print(f"corrected solution: w = {to_text(fixed.solution)}", file=out)


def cmd_show(args, out) -> int:
    _show(get(_load(args), args.id), out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cat = _load(args)
    entry = get(cat, args.id)
    cfg = _config(args)
    params = effective_params(entry, cfg.params)
    unknown = sorted(set(cfg.params) - set(params))
    if unknown:
        raise UsageError(f"{entry.id} has no parameter(s) {', '.join(unknown)}")
    check_params(entry, params)
    rep = verify_entry(entry, cfg)
    _print_report(rep, out)
    reports = [rep]
    from .verifier import summarize

    _write_outputs(args, reports, summarize(reports), cfg, cat)
    return _exit_code(reports)


def cmd_verify_all(args, out) -> int:
    cat = _load(args)
    cfg = _config(args)
    known = {p.name for e in cat for p in e.params}
    unknown = sorted(set(cfg.params) - known)
    if unknown:
        raise UsageError(f"no catalogue entry has parameter(s) {', '.join(unknown)}")
    start = time.perf_counter()
    reports, summary = verify_all(
        cat, cfg, jobs=args.jobs, catalog_path=args.catalog, progress=lambda r: _print_report(r, out)
    )
    counts = ", ".join(f"{k} {v}" for k, v in summary["counts"].items() if v)
    print(f"{summary['entries']} entries: {counts}; PASS fraction {summary['pass_fraction']:.3f}"
          f" ({time.perf_counter() - start:.1f} s)", file=out)
    _write_outputs(args, reports, summary, cfg, cat)
    return _exit_code(reports)


def cmd_export(args, out) -> int:
    if args.catalog:
        text = Path(args.catalog).read_text(encoding="utf-8")
        load(args.catalog)  # refuse to export a catalogue that does not load
    else:
        text = default_path().read_text(encoding="utf-8")
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_OK


COMMANDS = {
    "list": cmd_list,
    "show": cmd_show,
    "verify": cmd_verify,
    "verify-all": cmd_verify_all,
    "export-catalog": cmd_export,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    """Run one invocation and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except ConstraintViolation as exc:
        print(f"exactpde: ConstraintViolation: {exc}", file=err)
    except (UsageError, NotFound, SchemaError, ValueError, OSError) as exc:
        print(f"exactpde: error: {exc}", file=err)
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
