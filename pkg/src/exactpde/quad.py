"""Batch-adaptive Gauss-Kronrod quadrature and the Leibniz rule for integral nodes.

All integrands are vectorized: a call receives the nodes of every active
panel at once and returns arrays with a leading node axis followed by the
batch shape.  Panels are shared by the whole batch, so the discretization
is the same at every sample point.  That keeps quadrature noise a smooth
function of (t, x), which is what lets finite differences of quadrature
results agree with the jets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureFailure
from .jet import Jet

# 7-point Gauss / 15-point Kronrod on [-1, 1]
_XK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ]
)

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # ascending, 15 points
W_KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
W_GAUSS = np.zeros(15)
# Gauss nodes are the odd-indexed Kronrod nodes (x_k for k = 1, 3, 5, 7)
_g_full = np.concatenate([_WG[:-1], _WG[::-1]])
W_GAUSS[1::2] = _g_full


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-11
    rel_tol: float = 1e-11
    max_subdivisions: int = 2000
    omega: float = 8.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT = QuadConfig()

Components = list  # list of arrays/floats with leading node axis


def adaptive(
    fn: Callable[[np.ndarray], Sequence],
    a: float,
    b: float,
    cfg: QuadConfig = DEFAULT,
    batch_shape: tuple = (),
    initial_panels: int = 1,
):
    """Integrate a list of component functions over ``[a, b]``.

    ``fn(s)`` takes a 1-D node array and returns a list of components, each
    broadcastable to ``(len(s),) + batch_shape``.  Returns ``(values,
    err)`` where ``values`` is the list of integrals (shape ``batch_shape``)
    and ``err`` the summed error estimate (max over batch and components).
    """
    edges = np.linspace(a, b, initial_panels + 1)
    pending = list(zip(edges[:-1], edges[1:]))
    done: list | None = None
    done_err = 0.0
    n_panels = len(pending)
    first = True
    total = None
    while pending:
        lo = np.array([p[0] for p in pending])
        hi = np.array([p[1] for p in pending])
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        nodes = (mid[:, None] + half[:, None] * NODES[None, :]).reshape(-1)
        comps = fn(nodes)
        P = len(pending)
        kron, errs = [], []
        bshape = (P, 15) + tuple(batch_shape)
        for c in comps:
            if isinstance(c, float) and c == 0.0:
                kron.append(None)
                errs.append(None)
                continue
            arr = np.broadcast_to(np.asarray(c, float), (P * 15,) + tuple(batch_shape)).reshape(bshape)
            hs = half.reshape((P,) + (1,) * len(batch_shape))
            k = np.einsum("k,pk...->p...", W_KRONROD, arr) * hs
            g = np.einsum("k,pk...->p...", W_GAUSS, arr) * hs
            kron.append(k)
            errs.append(np.abs(k - g))
        if first:
            total = [None if k is None else k.sum(axis=0) for k in kron]
            first = False
        # acceptance per panel, componentwise against the running total
        ok = np.ones(P, dtype=bool)
        span = abs(b - a) if b != a else 1.0
        for k, e, tot in zip(kron, errs, total):
            if k is None:
                continue
            tol = cfg.abs_tol if tot is None else np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(tot))
            tol = np.broadcast_to(tol, e.shape[1:])
            frac = (np.abs(hi - lo) / span).reshape((P,) + (1,) * len(batch_shape))
            bad = e > tol[None, ...] * frac
            bad |= ~np.isfinite(e)
            ok &= ~bad.reshape(P, -1).any(axis=1) if bad.ndim > 1 else ~bad
        if done is None:
            done = [None] * len(kron)
        for i, k in enumerate(kron):
            if k is not None:
                done[i] = (0.0 if done[i] is None else done[i]) + k[ok].sum(axis=0)
        for e in errs:
            if e is not None and ok.any():
                done_err += float(np.max(e[ok].reshape(int(ok.sum()), -1).sum(axis=0), initial=0.0))
        new_pending = []
        for p, good in zip(pending, ok):
            if not good:
                m = 0.5 * (p[0] + p[1])
                new_pending += [(p[0], m), (m, p[1])]
        n_panels += len(new_pending) // 2
        if new_pending and n_panels > cfg.max_subdivisions:
            worst = pending[int(np.argmin(ok))]
            raise QuadratureFailure(
                f"no convergence after {cfg.max_subdivisions} subdivisions; "
                f"worst subinterval [{worst[0]:.6g}, {worst[1]:.6g}] of [{a:.6g}, {b:.6g}]"
            )
        if new_pending:
            # refresh the magnitude estimate used by the relative tolerance
            total = [
                None if k is None else (0.0 if d is None else d) + k[~ok].sum(axis=0)
                for k, d in zip(kron, done)
            ]
        pending = new_pending
    values = [0.0 if d is None else d for d in done]
    return values, done_err


def integrate(f: Callable[[np.ndarray], Jet], a: float, b: float, cfg: QuadConfig = DEFAULT, n: int = 2) -> Jet:
    """Componentwise integral of a jet-valued integrand over ``[a, b]`` (``a <= b``).

    ``f`` receives an array of nodes and returns a jet whose components
    carry the node axis first.
    """
    if a > b:
        raise ValueError("integrate needs a <= b")

    def comps(s):
        return f(s).components(n)

    vals, _ = adaptive(comps, a, b, cfg)
    return Jet(vals[0], vals[1 : 1 + n], vals[1 + n :])
