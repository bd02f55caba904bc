"""Jet evaluation of solution expressions and substitution into residuals.

Everything is batched: ``t`` and ``x`` may be arrays, and every node works
on whole arrays at once.  Integral nodes prepend a quadrature-node axis to
the batch shape; root nodes keep the shape.  ``EvalEnv.shape`` always holds
the full current batch shape, and every bound array broadcasts against it
when right-aligned.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from . import jet as J
from . import special
from .errors import (
    DomainError,
    EvaluationError,
    NonFinite,
    UnboundName,
    ValidationError,
)
from .expr import (
    ArbFn,
    Binary,
    Const,
    Expr,
    FieldVar,
    Integral,
    Param,
    Root,
    Special,
    Unary,
    Var,
    additive_terms,
)
from .funcspace import SmoothFn, eval_fn
from .jet import Jet
from .quad import DEFAULT as DEFAULT_QUAD
from .quad import QuadConfig


@dataclass
class EvalEnv:
    """Bindings and settings for one batched evaluation."""

    params: Mapping[str, float]
    slots: Mapping[str, SmoothFn]
    bindings: dict = field(default_factory=dict)
    ndirs: int = 2
    shape: tuple = ()
    quad: QuadConfig = DEFAULT_QUAD
    band: float | None = None  # excluded neighbourhood of 0 for symmetric infinite ranges
    mode: str = "raise"  # "raise" or "nan"
    stats: dict | None = None

    @classmethod
    def at(
        cls,
        t,
        x,
        params: Mapping[str, float] | None = None,
        slots: Mapping[str, SmoothFn] | None = None,
        jets: bool = True,
        **kw,
    ) -> "EvalEnv":
        """Environment at the point(s) ``(t, x)``; ``jets=False`` gives value mode."""
        t = np.asarray(t, float) if np.ndim(t) else float(t)
        x = np.asarray(x, float) if np.ndim(x) else float(x)
        shape = np.broadcast_shapes(np.shape(t), np.shape(x))
        if jets:
            tj, xj = J.seeds(t, x)
            n = 2
        else:
            tj, xj, n = Jet(t), Jet(x), 0
        return cls(dict(params or {}), dict(slots or {}), {"t": tj, "x": xj}, n, shape, **kw)

    def child(self, name: str, value: Jet, shape: tuple | None = None, ndirs: int | None = None) -> "EvalEnv":
        b = dict(self.bindings)
        b[name] = value
        return replace(
            self,
            bindings=b,
            shape=self.shape if shape is None else shape,
            ndirs=self.ndirs if ndirs is None else ndirs,
        )

    def stripped(self) -> "EvalEnv":
        """Same point, value-only bindings (no directions)."""
        b = {k: v.value_only() for k, v in self.bindings.items()}
        return replace(self, bindings=b, ndirs=0)

    def note(self, key: str, value: float) -> None:
        if self.stats is not None:
            self.stats[key] = max(self.stats.get(key, 0.0), float(value))


def _attach(err: EvaluationError, node: Expr) -> EvaluationError:
    if err.span is None and getattr(node, "span", None) is not None:
        err.span = node.span
        err.args = (f"{err.message} (at {node.span})",)
    return err


def eval_expr(e: Expr, env: EvalEnv) -> Jet:
    """Jet of ``e`` at the environment's point(s)."""
    if env.mode == "nan":
        with J.lenient():
            return _eval(e, env)
    return _eval(e, env)


def _check_value(j: Jet, node: Expr) -> Jet:
    if J._STRICT[-1] and not np.all(np.isfinite(j.v)):
        raise NonFinite("non-finite intermediate value", getattr(node, "span", None))
    return j


def _eval(e: Expr, env: EvalEnv) -> Jet:
    try:
        if isinstance(e, Const):
            return Jet(float(e.value))
        if isinstance(e, Param):
            try:
                return Jet(float(env.params[e.name]))
            except KeyError:
                raise UnboundName(f"parameter {e.name!r} is not bound", e.span) from None
        if isinstance(e, Var):
            try:
                return env.bindings[e.name]
            except KeyError:
                raise UnboundName(f"variable {e.name!r} is not bound", e.span) from None
        if isinstance(e, FieldVar):
            raise ValidationError(f"field variable {e.name!r} in a solution expression", e.span)
        if isinstance(e, Binary):
            a = _eval(e.lhs, env)
            b = _eval(e.rhs, env)
            return _check_value(J.BINARY[e.op](a, b), e)
        if isinstance(e, Unary):
            return _check_value(J.UNARY[e.op](_eval(e.arg, env)), e)
        if isinstance(e, ArbFn):
            return _check_value(_eval_arbfn(e, env), e)
        if isinstance(e, Special):
            args = [_eval(a, env) for a in e.args]
            return _check_value(special.apply_special(e.kind, args), e)
        if isinstance(e, Integral):
            return _check_value(eval_integral(e, env), e)
        if isinstance(e, Root):
            from .implicit import eval_root

            return _check_value(eval_root(e, env), e)
    except EvaluationError as err:
        raise _attach(err, e)
    raise TypeError(f"cannot evaluate {e!r}")


def _eval_arbfn(e: ArbFn, env: EvalEnv) -> Jet:
    try:
        f = env.slots[e.slot]
    except KeyError:
        raise UnboundName(f"function slot {e.slot!r} is not bound", e.span) from None
    u = _eval(e.arg, env)
    k = e.order
    if not u.g:
        return Jet(eval_fn(f, k, u.v))
    return J.chain(u, eval_fn(f, k, u.v), eval_fn(f, k + 1, u.v), eval_fn(f, k + 2, u.v))


# ----------------------------------------------------------------- integrals


def _is_constant(j: Jet) -> bool:
    return all(J._is_zero(c) or not np.any(c) for c in j.g)


def eval_integral(node: Integral, env: EvalEnv) -> Jet:
    """Integral node with a constant lower limit and a jet-valued upper limit.

    With ``h`` the integrand (dummy held fixed when differentiating), ``Psi``
    the integrand at the dummy fixed to ``U.v`` and ``Phi`` the integrand
    with the dummy replaced by the full jet ``U``::

        I_i  = int h_i + Psi U_i
        I_ij = int h_ij + Psi_i U_j + Phi_j U_i + Psi U_ij
    """
    lower = _eval(node.lower, env)
    if not _is_constant(lower):
        raise DomainError("integral lower limit must not depend on t, x or a root unknown", node.lower.span)
    upper = _eval(node.upper, env)
    L = lower.v
    U = upper
    n = max(env.ndirs, U.n)
    pieces = [(L, U)]
    if env.band is not None and _is_constant(U):
        lo, hi = np.asarray(L, float), np.asarray(U.v, float)
        if lo.ndim == 0 and hi.ndim == 0 and lo < -env.band and hi > env.band:
            pieces = [(float(lo), Jet(-env.band)), (env.band, Jet(float(hi)))]
    total = None
    for a, b in pieces:
        part = _integrate_piece(node, env, a, b, n)
        total = part if total is None else J.add(total, part)
    if _is_constant(U):
        return total
    Psi = _eval(node.integrand, env.child(node.dummy, Jet(U.v)))
    Phi = _eval(node.integrand, env.child(node.dummy, U))
    g = [J._add(total.d(i), J._mul(Psi.v, U.d(i))) for i in range(n)]
    h = []
    for i in range(n):
        for j in range(i + 1):
            term = J._add(total.dd(i, j), J._mul(Psi.d(i), U.d(j)))
            term = J._add(term, J._mul(Phi.d(j), U.d(i)))
            term = J._add(term, J._mul(Psi.v, U.dd(i, j)))
            h.append(term)
    return Jet(total.v, g, h)


def _integrate_piece(node: Integral, env: EvalEnv, L, U: Jet, n: int) -> Jet:
    from .quad import adaptive

    width = U.v - L
    shape = np.broadcast_shapes(env.shape, np.shape(width), np.shape(L))
    pad = (1,) * len(shape)

    def comps(s):
        m = s.shape[0]
        xi = L + s.reshape((m,) + pad) * width
        sub = env.child(node.dummy, Jet(xi), shape=(m,) + shape)
        hj = _eval(node.integrand, sub)
        out = []
        for c in hj.components(n):
            out.append(0.0 if J._is_zero(c) else c * width)
        return out

    vals, err = adaptive(comps, 0.0, 1.0, env.quad, batch_shape=shape)
    env.note("quad_error", err)
    return Jet(vals[0], vals[1 : 1 + n], vals[1 + n :])


# ----------------------------------------------------------------- residuals


def field_values(wjet: Jet) -> dict[str, object]:
    return {
        "w": wjet.v,
        "w_t": wjet.d_t,
        "w_x": wjet.d_x,
        "w_tt": wjet.d_tt,
        "w_tx": wjet.d_tx,
        "w_xx": wjet.d_xx,
    }


def _eval_value(e: Expr, fields: Mapping, env: EvalEnv):
    """Value-level evaluation of a residual expression with fields bound."""
    if isinstance(e, FieldVar):
        return Jet(fields[e.name])
    if isinstance(e, Binary):
        return J.BINARY[e.op](_eval_value(e.lhs, fields, env), _eval_value(e.rhs, fields, env))
    if isinstance(e, Unary):
        return J.UNARY[e.op](_eval_value(e.arg, fields, env))
    if isinstance(e, Special):
        return special.apply_special(e.kind, [_eval_value(a, fields, env) for a in e.args])
    if isinstance(e, ArbFn):
        u = _eval_value(e.arg, fields, env)
        return Jet(eval_fn(env.slots[e.slot], e.order, u.v))
    return _eval(e, env)


def residual_eval(r: Expr, wjet: Jet, env: EvalEnv):
    """Residual ``R`` and the magnitudes of its top-level additive terms.

    ``env`` supplies ``t``, ``x``, parameters and slots (value mode is
    enough).  Returns ``(R, [|term_1|, ...])``.
    """
    fields = field_values(wjet)
    venv = env.stripped()
    try:
        R = _eval_value(r, fields, venv).v
        mags = [np.abs(s * _eval_value(term, fields, venv).v) for s, term in additive_terms(r)]
    except EvaluationError as err:
        raise _attach(err, r)
    if J._STRICT[-1] and not np.all(np.isfinite(R)):
        raise NonFinite("non-finite residual", r.span)
    return R, mags


def normalized_residual(r: Expr, wjet: Jet, env: EvalEnv):
    R, mags = residual_eval(r, wjet, env)
    denom = 1.0 + sum(mags)
    return np.abs(R) / denom, R, mags


__all__ = [
    "EvalEnv",
    "eval_expr",
    "eval_integral",
    "residual_eval",
    "normalized_residual",
    "field_values",
]
