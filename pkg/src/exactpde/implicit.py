"""Roots of scalar defining equations and their second-order jets.

For ``G(W, t, x) = 0`` the root value comes from a vectorized safeguarded
Newton iteration (bisection whenever Newton leaves the bracket).  The jet of
``W`` then follows from the implicit function theorem::

    W_i  = -G_i / G_W
    W_ij = -(G_ij + G_iW W_j + G_jW W_i + G_WW W_i W_j) / G_W

where the partials of ``G`` come from evaluating the equation with ``W``
seeded as one extra jet direction.  Nested roots simply add one more
direction per level.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import jet as J
from .errors import ConvergenceFailure, EvaluationError, NoBracket, SingularJacobian
from .expr import Root, additive_terms
from .jet import Jet

EPS_W = 1e-10
SCAN_POINTS = 33
MAX_ITER = 200
_EPS = np.finfo(float).eps


def solve_scalar(g: Callable[[float], float], lo: float, hi: float, tol: float = 0.0) -> float:
    """Scalar root of ``g`` on ``[lo, hi]`` by bisection-guarded secant steps.

    Returns a point with ``|g| <= tol`` or a bracket narrowed to rounding.
    """
    flo, fhi = g(lo), g(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0:
        raise NoBracket(f"no sign change on [{lo:g}, {hi:g}]")
    a, b, fa, fb = lo, hi, flo, fhi
    for _ in range(MAX_ITER):
        # secant candidate, fall back to bisection when it is not well inside
        m = 0.5 * (a + b)
        c = b - fb * (b - a) / (fb - fa) if fb != fa else m
        if not (min(a, b) < c < max(a, b)) or abs(c - m) > 0.45 * abs(b - a):
            c = m
        fc = g(c)
        if fc == 0 or abs(fc) <= tol or abs(b - a) <= 4 * _EPS * (1 + abs(c)):
            return c
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b, fb = c, fc
    raise ConvergenceFailure("bisection/secant did not converge")


def _newton(G: Callable[[np.ndarray], tuple], lo, hi, shape) -> np.ndarray:
    """Vectorized safeguarded Newton on per-point brackets ``[lo, hi]``."""
    lo = np.broadcast_to(np.asarray(lo, float), shape).copy()
    hi = np.broadcast_to(np.asarray(hi, float), shape).copy()
    glo, _ = G(lo)
    ghi, _ = G(hi)
    glo = np.broadcast_to(glo, shape).copy()
    ghi = np.broadcast_to(ghi, shape).copy()
    need = ~(np.isfinite(glo) & np.isfinite(ghi) & (glo * ghi <= 0))
    missing = np.zeros(shape, dtype=bool)
    if np.any(need):
        # scan for the first sign change along the bracket
        s = np.linspace(0.0, 1.0, SCAN_POINTS).reshape((SCAN_POINTS,) + (1,) * len(shape))
        ws = lo + s * (hi - lo)
        gs, _ = G(ws, scan=True)
        gs = np.broadcast_to(gs, ws.shape)
        change = (gs[:-1] * gs[1:] <= 0) & np.isfinite(gs[:-1]) & np.isfinite(gs[1:])
        found = change.any(axis=0)
        first = np.argmax(change, axis=0)
        new_lo = np.take_along_axis(ws, first[None], axis=0)[0]
        new_hi = np.take_along_axis(ws, first[None] + 1, axis=0)[0]
        lo = np.where(need & found, new_lo, lo)
        hi = np.where(need & found, new_hi, hi)
        missing = need & ~found
        if J._STRICT[-1] and np.any(missing):
            raise NoBracket(f"no sign change in the bracket at {int(missing.sum())} point(s)")
        glo, _ = G(lo)
        ghi, _ = G(hi)
        glo = np.broadcast_to(glo, shape).copy()
        ghi = np.broadcast_to(ghi, shape).copy()
    # orient so that G(lo) <= 0 <= G(hi)
    flip = glo > 0
    lo, hi = np.where(flip, hi, lo), np.where(flip, lo, hi)
    # start from the false-position point, kept away from the bracket ends
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = np.clip(glo / (glo - ghi), 0.05, 0.95)
    start = np.where(np.isfinite(frac), lo + frac * (hi - lo), 0.5 * (lo + hi))
    w = np.where(glo == 0, lo, np.where(ghi == 0, hi, start))
    done = (glo == 0) | (ghi == 0)
    for _ in range(MAX_ITER):
        gv, dg = G(w)
        gv = np.broadcast_to(gv, shape)
        dg = np.broadcast_to(dg, shape)
        neg = gv < 0
        lo = np.where(neg & ~done, w, lo)
        hi = np.where(~neg & ~done, w, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = gv / dg
        cand = w - step
        # a converged Newton step may round onto the bracket end; test it before the safeguard
        tiny = np.isfinite(step) & (np.abs(step) <= 4 * _EPS * (1 + np.abs(w)))
        a, b = np.minimum(lo, hi), np.maximum(lo, hi)
        bad = ~np.isfinite(cand) | (cand <= a) | (cand >= b)
        cand = np.where(bad, 0.5 * (lo + hi), cand)
        moved = np.abs(cand - w)
        conv = (gv == 0) | tiny | (moved <= 4 * _EPS * (1 + np.abs(w))) | (np.abs(hi - lo) <= 4 * _EPS * (1 + np.abs(w)))
        w = np.where(done | (gv == 0) | tiny, w, cand)
        done = done | (conv & np.isfinite(w))
        if np.all(done | ~np.isfinite(w)):
            break
    else:
        if J._STRICT[-1]:
            raise ConvergenceFailure("safeguarded Newton did not converge")
    w = np.where(missing, np.nan, w)
    if J._STRICT[-1] and not np.all(np.isfinite(w)):
        raise ConvergenceFailure("root iteration produced non-finite values")
    return w


def eval_root(node: Root, env) -> Jet:
    """Jet of the root node's body with its unknown bound to the root's jet."""
    from .evaluate import _eval

    venv = env.stripped()
    lo = _eval(node.lo, venv).v
    hi = _eval(node.hi, venv).v
    shape = np.broadcast_shapes(env.shape, np.shape(lo), np.shape(hi))

    def G(w, scan=False):
        sub = venv.child(node.unknown, Jet.seed(w, 0, 1), shape=np.shape(w) if scan else shape, ndirs=1)
        with J.lenient():
            gj = _eval(node.equation, sub)
        return gj.v, gj.d(0)

    wv = _newton(G, lo, hi, shape)

    n = env.ndirs
    wseed = Jet.seed(wv, n, n + 1)
    gj = _eval(node.equation, env.child(node.unknown, wseed, ndirs=n + 1))
    gw = gj.d(n)
    if J._STRICT[-1] and np.any(np.abs(gw) < EPS_W):
        raise SingularJacobian(f"|dG/d{node.unknown}| < {EPS_W:g} at the root", node.span)
    _record_root_residual(node, env, venv, wv, gj)

    inv = -1.0 / gw
    wg = [J._mul(gj.d(i), inv) for i in range(n)]
    wh = []
    for i in range(n):
        for j in range(i + 1):
            acc = gj.dd(i, j)
            acc = J._add(acc, J._mul(gj.dd(i, n), wg[j]))
            acc = J._add(acc, J._mul(gj.dd(j, n), wg[i]))
            acc = J._add(acc, J._mul(gj.dd(n, n), J._mul(wg[i], wg[j])))
            wh.append(J._mul(acc, inv))
    wjet = Jet(wv, wg, wh)
    return _eval(node.body, env.child(node.unknown, wjet))


def _record_root_residual(node: Root, env, venv, wv, gj: Jet) -> None:
    if env.stats is None:
        return
    from .evaluate import _eval

    sub = venv.child(node.unknown, Jet(wv))
    try:
        scale = 1.0
        for s, term in additive_terms(node.equation):
            scale = scale + np.abs(_eval(term, sub).v)
    except EvaluationError:
        scale = 1.0
    env.note("root_residual", float(np.max(np.abs(gj.v) / scale)))
    env.note("root_residual_abs", float(np.max(np.abs(gj.v))))
