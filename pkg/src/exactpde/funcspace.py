"""Concrete members of the arbitrary-function slots.

Every slot is realized by the family

    f(z) = c0 + c1 z + c2 sin(c3 z + c4) + c5 exp(c6 z)

optionally multiplied by a C-infinity bump when the slot must have compact
support.  Derivatives of any order are exact.  Guards are checked on a dense
grid and a slot is resampled until they hold.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import SamplingExhausted, SchemaError

COEFF_NAMES = ("c0", "c1", "c2", "c3", "c4", "c5", "c6")
DEFAULT_RANGES: dict[str, tuple[float, float]] = {
    "c0": (-1.5, 1.5),
    "c1": (-1.5, 1.5),
    "c2": (-1.0, 1.0),
    "c3": (-1.5, 1.5),
    "c4": (-math.pi, math.pi),
    "c5": (-1.0, 1.0),
    "c6": (-1.5, 1.5),
}
GUARD_POINTS = 201
MAX_ATTEMPTS = 50
MAX_ORDER = 5  # slots appear with up to three primes; jets need two more


@dataclass(frozen=True)
class SmoothFn:
    coeffs: tuple[float, ...]
    support: tuple[float, float] | None = None  # bump on hole < |z| < radius

    def __post_init__(self):
        if len(self.coeffs) != 7 or not all(math.isfinite(c) for c in self.coeffs):
            raise ValueError("SmoothFn needs 7 finite coefficients")

    def __call__(self, z, order: int = 0):
        return eval_fn(self, order, z)

    def as_dict(self) -> dict:
        d = {k: float(v) for k, v in zip(COEFF_NAMES, self.coeffs)}
        if self.support is not None:
            d["support"] = list(self.support)
        return d


def _family(f: SmoothFn, k: int, z):
    c0, c1, c2, c3, c4, c5, c6 = f.coeffs
    out = c2 * c3**k * np.sin(c3 * z + c4 + k * math.pi / 2) + c5 * c6**k * np.exp(c6 * z)
    if k == 0:
        out = out + c0 + c1 * z
    elif k == 1:
        out = out + c1
    return out


def _bump_derivs(z, hole: float, radius: float, kmax: int) -> list:
    """Derivatives 0..kmax of exp(-1/g) with g = (z^2-hole^2)(radius^2-z^2)."""
    z = np.asarray(z, float)
    # Taylor coefficients of the quartic g about z
    p = np.polynomial.Polynomial([-(hole**2) * radius**2, 0.0, hole**2 + radius**2, 0.0, -1.0])
    g = []
    dp = p
    for k in range(kmax + 1):
        g.append(dp(z) / math.factorial(k))
        dp = dp.deriv()
    inside = g[0] > 0
    g0 = np.where(inside, g[0], 1.0)
    # q = -1/g as a truncated series
    r = [1.0 / g0]
    for k in range(1, kmax + 1):
        s = sum(g[j] * r[k - j] for j in range(1, min(k, 4) + 1))
        r.append(-s / g0)
    q = [-c for c in r]
    e = [np.exp(q[0])]
    for k in range(1, kmax + 1):
        e.append(sum(j * q[j] * e[k - j] for j in range(1, k + 1)) / k)
    return [np.where(inside, e[k] * math.factorial(k), 0.0) for k in range(kmax + 1)]


def eval_fn(f: SmoothFn, order: int, z):
    """Exact ``order``-th derivative of ``f`` at ``z``."""
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"derivative order {order} outside 0..{MAX_ORDER}")
    if f.support is None:
        out = _family(f, order, z)
    else:
        hole, radius = f.support
        psi = _bump_derivs(z, hole, radius, order)
        out = sum(math.comb(order, j) * _family(f, j, z) * psi[order - j] for j in range(order + 1))
    if np.ndim(out) == 0:
        return float(out)
    return out


# ------------------------------------------------------------------ guards


@dataclass(frozen=True)
class SlotConstraint:
    """One guard: ``kind`` plus its arguments and the range it applies on."""

    kind: str = "none"
    order: int = 0
    min_abs: float = 0.0
    lo: float = -math.inf
    hi: float = math.inf
    radius: float = 8.0
    hole: float = 0.0
    range: tuple[float, float] | None = None

    KINDS = ("none", "nonvanishing_deriv", "positive", "bounded_range", "compact_support")

    @classmethod
    def from_dict(cls, d: Mapping) -> "SlotConstraint":
        d = dict(d)
        kind = d.pop("kind", "none")
        if kind not in cls.KINDS:
            raise SchemaError(None, f"unknown guard kind {kind!r}")
        if kind == "positive":
            d.setdefault("lo", d.pop("min", 0.0))
        if "range" in d and d["range"] is not None:
            d["range"] = tuple(float(v) for v in d["range"])
        try:
            return cls(kind=kind, **d)
        except TypeError as exc:
            raise SchemaError(None, f"bad guard {kind!r}: {exc}") from None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "nonvanishing_deriv":
            out.update(order=self.order, min_abs=self.min_abs)
        elif self.kind == "positive":
            out.update(order=self.order, min=self.lo)
        elif self.kind == "bounded_range":
            out.update(order=self.order, lo=self.lo, hi=self.hi)
        elif self.kind == "compact_support":
            out.update(radius=self.radius, hole=self.hole)
        if self.range is not None:
            out["range"] = list(self.range)
        return out

    def holds(self, f: SmoothFn, window: tuple[float, float]) -> bool:
        if self.kind in ("none", "compact_support"):
            return True
        lo_z, hi_z = self.range or window
        z = np.linspace(lo_z, hi_z, GUARD_POINTS)
        v = np.asarray(eval_fn(f, self.order, z))
        if not np.all(np.isfinite(v)):
            return False
        if self.kind == "nonvanishing_deriv":
            same_sign = np.all(v > 0) or np.all(v < 0)
            return bool(same_sign and np.min(np.abs(v)) >= self.min_abs)
        if self.kind == "positive":
            return bool(np.min(v) >= self.lo and np.min(v) > 0)
        return bool(np.min(v) >= self.lo and np.max(v) <= self.hi)


@dataclass(frozen=True)
class SlotSpec:
    """Catalogue metadata for one slot."""

    name: str
    arg: str | tuple[float, float] = "t"  # variable whose window applies, or explicit range
    guards: tuple[SlotConstraint, ...] = ()
    coeffs: Mapping[str, tuple[float, float]] = field(default_factory=dict)

    def window(self, entry_window: Sequence[float]) -> tuple[float, float]:
        if self.arg == "t":
            return (entry_window[0], entry_window[1])
        if self.arg == "x":
            return (entry_window[2], entry_window[3])
        return (float(self.arg[0]), float(self.arg[1]))

    def support(self) -> tuple[float, float] | None:
        for g in self.guards:
            if g.kind == "compact_support":
                return (g.hole, g.radius)
        return None


def _sub_seed(seed: int, entry_id: str, slot: str, attempt: int) -> np.random.Generator:
    return np.random.default_rng(
        [int(seed) & 0xFFFFFFFF, zlib.crc32(entry_id.encode()), zlib.crc32(slot.encode()), attempt]
    )


def sample(
    slot: SlotSpec,
    seed: int,
    window: Sequence[float],
    entry_id: str = "",
) -> SmoothFn:
    """Deterministic guarded draw for ``slot``; resamples up to 50 times."""
    ranges = dict(DEFAULT_RANGES)
    ranges.update({k: tuple(v) for k, v in slot.coeffs.items()})
    support = slot.support()
    win = slot.window(window)
    for attempt in range(MAX_ATTEMPTS):
        rng = _sub_seed(seed, entry_id, slot.name, attempt)
        coeffs = tuple(float(rng.uniform(*ranges[c])) if ranges[c][0] != ranges[c][1] else float(ranges[c][0]) for c in COEFF_NAMES)
        f = SmoothFn(coeffs, support)
        if all(g.holds(f, win) for g in slot.guards):
            return f
    raise SamplingExhausted(f"{entry_id or '?'}: slot {slot.name!r} failed its guards {MAX_ATTEMPTS} times")
