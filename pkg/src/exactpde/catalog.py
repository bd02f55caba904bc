"""The catalogue of PDE/solution pairs: schema, loader and integrity checks.

The shipped catalogue is a JSON file inside the package.  Every expression
is held as text in the expression grammar and parsed at load time, so a
catalogue that loads is one whose formulas all parse, respect binder
hygiene and only mention declared parameters and slots.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping

from .errors import ConstraintViolation, EvaluationError, ExactPDEError, NotFound, SchemaError
from .expr import (
    Expr,
    Integral,
    Root,
    Special,
    params_of,
    parse,
    slots_of,
    validate_residual,
    validate_solution,
    walk,
)
from .funcspace import COEFF_NAMES, DEFAULT_RANGES, SlotConstraint, SlotSpec

FORMAT_VERSION = 1
DEFAULT_WINDOW = (0.6, 1.4, 0.3, 1.1)
TIERS = ("A", "B", "C", "D")
_ID_RE = re.compile(r"^S[2-4]-\d{2}$")
_REL_OPS = ("!=", ">=", "<=", "==", ">", "<")


@dataclass(frozen=True)
class ParamSpec:
    name: str
    default: float
    constraint: str = ""


@dataclass(frozen=True)
class Constraint:
    """``lhs op rhs`` over parameters, e.g. ``b^2 - 4*a*k != 0``."""

    text: str
    lhs: Expr
    op: str
    rhs: Expr

    def holds(self, params: Mapping[str, float]) -> bool:
        l, r = _const_value(self.lhs, params), _const_value(self.rhs, params)
        close = abs(l - r) <= 1e-12 * (1.0 + abs(r))
        return {
            "!=": not close,
            "==": close,
            ">": l > r,
            "<": l < r,
            ">=": l >= r or close,
            "<=": l <= r or close,
        }[self.op]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    source_label: str
    residual: Expr
    solution: Expr
    params: tuple[ParamSpec, ...]
    slots: tuple[SlotSpec, ...]
    window: tuple[float, float, float, float]
    tier: str
    quarantined: bool = False
    note: str = ""
    superposition: bool = False
    band: float | None = None
    constraints: tuple[Constraint, ...] = field(default=(), repr=False)
    raw: Mapping = field(default_factory=dict, repr=False, compare=False)
    repair: Mapping | None = field(default=None, repr=False, compare=False)

    @property
    def param_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    def repaired(self) -> "CatalogEntry | None":
        """The corrected reading of a quarantined entry, if one is recorded."""
        if self.repair is None:
            return None
        d = {k: v for k, v in self.raw.items() if k not in ("repair", "quarantined", "note", "tier")}
        d.update({k: v for k, v in self.repair.items() if k != "note"})
        d["note"] = self.repair.get("note", "")
        try:
            d["tier"] = tier_of(parse(d["solution"], {p["name"] for p in d.get("params", [])}))
            return _entry_from_dict(d)
        except SchemaError as exc:
            raise SchemaError(self.id, f"repair: {exc.reason}") from None
        except ExactPDEError as exc:
            raise SchemaError(self.id, f"repair: {exc}") from None

    def slot(self, name: str) -> SlotSpec:
        for s in self.slots:
            if s.name == name:
                return s
        raise NotFound(f"{self.id} has no slot {name!r}")


@dataclass(frozen=True)
class Catalog:
    version: int
    entries: tuple[CatalogEntry, ...]
    checksum: str
    coefficient_ranges: Mapping[str, tuple[float, float]]
    source: str = ""

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def ids(self) -> list[str]:
        return [e.id for e in self.entries]


# ------------------------------------------------------------------ helpers


def _const_value(e: Expr, params: Mapping[str, float]) -> float:
    from .evaluate import EvalEnv, eval_expr

    env = EvalEnv.at(0.0, 0.0, params, jets=False)
    return float(eval_expr(e, env).v)


def tier_of(e: Expr) -> str:
    """Highest tier letter required by the nodes in ``e``."""
    tier = "A"
    for node in walk(e):
        if isinstance(node, Special):
            return "D"
        if isinstance(node, Root):
            tier = "C"
        elif isinstance(node, Integral) and tier == "A":
            tier = "B"
    return tier


def parse_constraints(text: str, entry_id: str | None = None) -> tuple[Constraint, ...]:
    """Parse ``"a != 0 and n != 1"`` into constraint predicates."""
    out = []
    for part in (p.strip() for p in text.split(" and ")):
        if not part:
            continue
        for op in _REL_OPS:
            if op in part:
                lhs, rhs = part.split(op, 1)
                break
        else:
            raise SchemaError(entry_id, f"constraint {part!r} has no relational operator")
        try:
            out.append(Constraint(part, parse(lhs), op, parse(rhs)))
        except ExactPDEError as exc:
            raise SchemaError(entry_id, f"constraint {part!r}: {exc}") from None
    return tuple(out)


def check_params(entry: CatalogEntry, params: Mapping[str, float]) -> None:
    """Raise ConstraintViolation unless ``params`` satisfy every predicate."""
    unknown = set(params) - set(entry.param_names)
    if unknown:
        raise ConstraintViolation(f"{entry.id}: unknown parameter(s) {', '.join(sorted(unknown))}")
    for c in entry.constraints:
        try:
            ok = c.holds(params)
        except EvaluationError as exc:
            raise ConstraintViolation(f"{entry.id}: cannot evaluate {c.text!r}: {exc}") from None
        if not ok:
            vals = ", ".join(f"{k}={params[k]:g}" for k in sorted(params_of(c.lhs) | params_of(c.rhs)))
            raise ConstraintViolation(f"{entry.id}: constraint {c.text!r} violated ({vals})")


def default_params(entry: CatalogEntry) -> dict[str, float]:
    return {p.name: p.default for p in entry.params}


# ------------------------------------------------------------------ loading


def _slot_from_dict(d: Mapping, entry_id: str) -> SlotSpec:
    if "name" not in d:
        raise SchemaError(entry_id, "slot without a name")
    arg = d.get("arg", "t")
    if not (arg in ("t", "x") or (isinstance(arg, list) and len(arg) == 2 and arg[0] < arg[1])):
        raise SchemaError(entry_id, f"slot {d['name']!r}: bad arg {arg!r}")
    if isinstance(arg, list):
        arg = (float(arg[0]), float(arg[1]))
    guard = d.get("guard", [])
    if isinstance(guard, Mapping):
        guard = [guard]
    try:
        guards = tuple(SlotConstraint.from_dict(g) for g in guard)
    except SchemaError as exc:
        raise SchemaError(entry_id, f"slot {d['name']!r}: {exc.reason}") from None
    coeffs = {}
    for k, v in d.get("coeffs", {}).items():
        if k not in COEFF_NAMES or len(v) != 2 or v[0] > v[1]:
            raise SchemaError(entry_id, f"slot {d['name']!r}: bad coefficient range {k}={v!r}")
        coeffs[k] = (float(v[0]), float(v[1]))
    return SlotSpec(d["name"], arg, guards, coeffs)


def _entry_from_dict(d: Mapping) -> CatalogEntry:
    eid = d.get("id")
    if not isinstance(eid, str) or not _ID_RE.match(eid):
        raise SchemaError(eid, "id must look like S2-01")
    for key in ("residual", "solution", "tier"):
        if key not in d:
            raise SchemaError(eid, f"missing field {key!r}")

    params = []
    for p in d.get("params", []):
        try:
            params.append(ParamSpec(p["name"], float(p["default"]), p.get("constraint", "") or ""))
        except (KeyError, TypeError, ValueError):
            raise SchemaError(eid, f"bad parameter record {p!r}") from None
    names = {p.name for p in params}
    if len(names) != len(params):
        raise SchemaError(eid, "duplicate parameter names")

    try:
        residual = parse(d["residual"], names)
        validate_residual(residual)
        solution = parse(d["solution"], names)
        validate_solution(solution)
    except ExactPDEError as exc:
        raise SchemaError(eid, str(exc)) from None

    used = params_of(residual) | params_of(solution)
    missing = used - names
    if missing:
        raise SchemaError(eid, f"undeclared parameter(s) {', '.join(sorted(missing))}")

    slots = tuple(_slot_from_dict(s, eid) for s in d.get("slots", []))
    slot_names = {s.name for s in slots}
    if len(slot_names) != len(slots):
        raise SchemaError(eid, "duplicate slot names")
    needed = slots_of(residual) | slots_of(solution)
    if needed - slot_names:
        raise SchemaError(eid, f"undeclared slot(s) {', '.join(sorted(needed - slot_names))}")

    window = tuple(float(v) for v in d.get("window", DEFAULT_WINDOW))
    if len(window) != 4 or not (window[0] < window[1] and window[2] < window[3]):
        raise SchemaError(eid, f"bad window {window!r}")

    tier = d["tier"]
    if tier not in TIERS:
        raise SchemaError(eid, f"unknown tier {tier!r}")
    if tier != tier_of(solution):
        raise SchemaError(eid, f"tier {tier} disagrees with solution content ({tier_of(solution)})")

    constraints = []
    for p in params:
        constraints.extend(parse_constraints(p.constraint, eid))
    for c in constraints:
        extra = (params_of(c.lhs) | params_of(c.rhs)) - names
        if extra:
            raise SchemaError(eid, f"constraint {c.text!r} names undeclared parameter(s) {sorted(extra)}")

    repair = d.get("repair")
    if repair is not None:
        allowed = {"residual", "solution", "slots", "params", "note"}
        if not isinstance(repair, Mapping) or not set(repair) <= allowed or not (set(repair) - {"note"}):
            raise SchemaError(eid, f"repair must be an object with some of {sorted(allowed)}")

    band = d.get("band")
    entry = CatalogEntry(
        id=eid,
        source_label=d.get("source_label", ""),
        residual=residual,
        solution=solution,
        params=tuple(params),
        slots=slots,
        window=window,  # type: ignore[arg-type]
        tier=tier,
        quarantined=bool(d.get("quarantined", False)),
        note=d.get("note", ""),
        superposition=bool(d.get("superposition", False)),
        band=None if band is None else float(band),
        constraints=tuple(constraints),
        raw=dict(d),
        repair=None if repair is None else dict(repair),
    )
    try:
        check_params(entry, default_params(entry))
    except ConstraintViolation as exc:
        raise SchemaError(eid, f"default parameters violate constraints: {exc}") from None
    if entry.repair is not None:
        entry.repaired()  # the corrected reading must load as well
    return entry


def default_path():
    return resources.files("exactpde").joinpath("data/catalog.json")


def loads(text: str, source: str = "<string>") -> Catalog:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(None, f"{source}: invalid JSON: {exc}") from None
    if not isinstance(doc, Mapping) or "entries" not in doc:
        raise SchemaError(None, f"{source}: expected an object with 'entries'")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise SchemaError(None, f"{source}: unsupported format version {version!r}")
    entries = []
    seen: set[str] = set()
    for d in doc["entries"]:
        e = _entry_from_dict(d)
        if e.id in seen:
            raise SchemaError(e.id, "duplicate id")
        seen.add(e.id)
        entries.append(e)
    ranges = dict(DEFAULT_RANGES)
    for k, v in doc.get("coefficient_ranges", {}).items():
        if k not in COEFF_NAMES:
            raise SchemaError(None, f"unknown coefficient {k!r}")
        ranges[k] = (float(v[0]), float(v[1]))
    checksum = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return Catalog(version, tuple(entries), checksum, ranges, source)


def load(path: str | Path | None = None) -> Catalog:
    """Load a catalogue file, or the embedded default when ``path`` is None."""
    if path is None:
        return loads(default_path().read_text(encoding="utf-8"), "embedded catalogue")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(None, f"cannot read {path}: {exc}") from None
    return loads(text, str(path))


def get(catalog: Catalog, entry_id: str) -> CatalogEntry:
    for e in catalog.entries:
        if e.id == entry_id:
            return e
    raise NotFound(f"no catalogue entry {entry_id!r}")


__all__ = [
    "Catalog",
    "CatalogEntry",
    "ParamSpec",
    "Constraint",
    "load",
    "loads",
    "get",
    "default_params",
    "check_params",
    "tier_of",
    "parse_constraints",
    "DEFAULT_WINDOW",
]
