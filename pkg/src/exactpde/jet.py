"""Second-order truncated Taylor arithmetic ("jets").

A :class:`Jet` holds a value, the gradient and the lower triangle of the
Hessian with respect to ``n`` seed directions.  The two-direction case
``(t, x)`` is the workhorse (``Jet2``); the implicit-root machinery appends
one direction per unknown, so the three-direction case ``(t, x, W)`` plays
the role of ``Jet3``.  Components are floats or numpy arrays of a common
batch shape; all arithmetic broadcasts.

Jets with fewer directions combine with longer ones as if the missing
directions were zero.  New directions are only ever appended, which keeps
this padding consistent.
"""

from __future__ import annotations

import contextlib
from typing import Callable, Sequence

import numpy as np

from .errors import DivisionByZero, DomainError, NonFinite

ZERO = 0.0

# Domain checks are skipped inside ``lenient()``; Newton iterations rely on
# NaN propagation instead of exceptions.
_STRICT = [True]


@contextlib.contextmanager
def lenient():
    _STRICT.append(False)
    try:
        with np.errstate(all="ignore"):
            yield
    finally:
        _STRICT.pop()


def _idx(i: int, j: int) -> int:
    if i < j:
        i, j = j, i
    return i * (i + 1) // 2 + j


def _is_zero(p) -> bool:
    return type(p) is float and p == 0.0


def _mul(p, q):
    if _is_zero(p) or _is_zero(q):
        return ZERO
    return p * q


def _add(p, q):
    if _is_zero(p):
        return q
    if _is_zero(q):
        return p
    return p + q


class Jet:
    """Value plus first and second partials with respect to ``n`` directions."""

    __slots__ = ("v", "g", "h")

    def __init__(self, v, g: Sequence = (), h: Sequence | None = None):
        self.v = v
        self.g = tuple(g)
        n = len(self.g)
        if h is None:
            h = (ZERO,) * (n * (n + 1) // 2)
        self.h = tuple(h)

    # construction --------------------------------------------------------

    @classmethod
    def const(cls, v) -> "Jet":
        return cls(v)

    @classmethod
    def seed(cls, v, index: int, n: int | None = None) -> "Jet":
        """Independent variable number ``index`` among ``n`` directions."""
        n = index + 1 if n is None else n
        g = [ZERO] * n
        g[index] = 1.0
        return cls(v, g)

    # access --------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.g)

    def d(self, i: int):
        return self.g[i] if i < len(self.g) else ZERO

    def dd(self, i: int, j: int):
        n = len(self.g)
        if i >= n or j >= n:
            return ZERO
        return self.h[_idx(i, j)]

    # Jet2 names: direction 0 is t, direction 1 is x
    d_t = property(lambda self: self.d(0))
    d_x = property(lambda self: self.d(1))
    d_tt = property(lambda self: self.dd(0, 0))
    d_tx = property(lambda self: self.dd(0, 1))
    d_xx = property(lambda self: self.dd(1, 1))

    def components(self, n: int = 2) -> list:
        """Value, gradient and Hessian triangle padded to ``n`` directions."""
        out = [self.v]
        out += [self.d(i) for i in range(n)]
        out += [self.dd(i, j) for i in range(n) for j in range(i + 1)]
        return out

    def padded(self, n: int) -> "Jet":
        if n <= self.n:
            return self
        g = list(self.g) + [ZERO] * (n - self.n)
        h = list(self.h) + [ZERO] * (n * (n + 1) // 2 - len(self.h))
        return Jet(self.v, g, h)

    def truncated(self, n: int) -> "Jet":
        """Drop directions ``>= n``."""
        if n >= self.n:
            return self
        return Jet(self.v, self.g[:n], self.h[: n * (n + 1) // 2])

    def value_only(self) -> "Jet":
        return Jet(self.v)

    def map(self, fn: Callable) -> "Jet":
        return Jet(fn(self.v), [fn(c) for c in self.g], [fn(c) for c in self.h])

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(c)) for c in self.components(self.n))

    def __repr__(self) -> str:
        return f"Jet(v={self.v!r}, g={self.g!r}, h={self.h!r})"

    # operators -----------------------------------------------------------

    def __add__(self, other):
        return add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __mul__(self, other):
        return mul(self, _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _lift(other))

    def __rtruediv__(self, other):
        return div(_lift(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, other):
        return power(self, _lift(other))


def _lift(o) -> Jet:
    return o if isinstance(o, Jet) else Jet(o)


def _pair(a: Jet, b: Jet) -> tuple[Jet, Jet, int]:
    n = max(a.n, b.n)
    return a.padded(n), b.padded(n), n


def add(a: Jet, b: Jet) -> Jet:
    a, b, _ = _pair(a, b)
    return Jet(a.v + b.v, [_add(p, q) for p, q in zip(a.g, b.g)], [_add(p, q) for p, q in zip(a.h, b.h)])


def neg(a: Jet) -> Jet:
    return Jet(-a.v, [c if _is_zero(c) else -c for c in a.g], [c if _is_zero(c) else -c for c in a.h])


def sub(a: Jet, b: Jet) -> Jet:
    return add(a, neg(b))


def scale(a: Jet, s) -> Jet:
    return Jet(a.v * s, [_mul(c, s) for c in a.g], [_mul(c, s) for c in a.h])


def mul(a: Jet, b: Jet) -> Jet:
    if not b.g:
        return scale(a, b.v)
    if not a.g:
        return scale(b, a.v)
    a, b, n = _pair(a, b)
    g = [_add(_mul(a.v, q), _mul(b.v, p)) for p, q in zip(a.g, b.g)]
    h = []
    for i in range(n):
        for j in range(i + 1):
            k = _idx(i, j)
            term = _add(_mul(a.v, b.h[k]), _mul(b.v, a.h[k]))
            term = _add(term, _mul(a.g[i], b.g[j]))
            term = _add(term, _mul(a.g[j], b.g[i]))
            h.append(term)
    return Jet(a.v * b.v, g, h)


def chain(u: Jet, f0, f1=None, f2=None) -> Jet:
    """Compose a scalar function with value/derivatives ``f0, f1, f2`` at ``u.v``.

    ``d_i = f1 u_i`` and ``d_ij = f1 u_ij + f2 u_i u_j``.
    """
    if not u.g:
        return Jet(f0)
    n = u.n
    g = [_mul(f1, c) for c in u.g]
    h = []
    for i in range(n):
        for j in range(i + 1):
            h.append(_add(_mul(f1, u.h[_idx(i, j)]), _mul(f2, _mul(u.g[i], u.g[j]))))
    return Jet(f0, g, h)


def _any(mask) -> bool:
    return _STRICT[-1] and bool(np.any(mask))


def recip(b: Jet) -> Jet:
    if _any(b.v == 0):
        raise DivisionByZero("division by zero")
    r = 1.0 / b.v
    if not b.g:
        return Jet(r)
    return chain(b, r, -r * r, 2.0 * r * r * r)


def div(a: Jet, b: Jet) -> Jet:
    if not b.g:
        if _any(b.v == 0):
            raise DivisionByZero("division by zero")
        return scale(a, 1.0 / b.v)
    return mul(a, recip(b))


def _const_value(b: Jet):
    """Scalar value if ``b`` is a direction-free, batch-uniform constant."""
    if b.g and not all(_is_zero(c) or not np.any(c) for c in b.g):
        return None
    v = np.asarray(b.v)
    if v.ndim == 0:
        return float(v)
    flat = v.reshape(-1)
    if flat.size and np.all(flat == flat[0]):
        return float(flat[0])
    return None


def powi(a: Jet, n: int) -> Jet:
    """Integer power; exact for any sign of the base."""
    if n == 0:
        return Jet(np.ones_like(a.v) if isinstance(a.v, np.ndarray) else 1.0)
    if n < 0:
        return recip(powi(a, -n))
    if n == 1:
        return a
    if n == 2:
        return mul(a, a)
    u = a.v
    return chain(a, u**n, n * u ** (n - 1), n * (n - 1) * u ** (n - 2))


def powr(a: Jet, p: float) -> Jet:
    """Real power ``a^p`` for a positive base."""
    if _any(a.v <= 0):
        raise DomainError(f"non-integer power {p:g} of a non-positive base")
    u = a.v
    f0 = u**p
    if not a.g:
        return Jet(f0)
    return chain(a, f0, p * f0 / u, p * (p - 1) * f0 / (u * u))


def power(a: Jet, b: Jet) -> Jet:
    p = _const_value(b)
    if p is not None:
        if p == int(p) and abs(p) <= 64:
            return powi(a, int(p))
        return powr(a, p)
    return exp(mul(b, log(a)))


def exp(u: Jet) -> Jet:
    e = np.exp(u.v)
    return chain(u, e, e, e)


def log(u: Jet) -> Jet:
    if _any(u.v <= 0):
        raise DomainError("logarithm of a non-positive number")
    r = 1.0 / u.v
    return chain(u, np.log(u.v), r, -r * r)


def sqrt(u: Jet) -> Jet:
    if _any(u.v < 0):
        raise DomainError("square root of a negative number")
    s = np.sqrt(u.v)
    if not u.g:
        return Jet(s)
    if _any(s == 0):
        raise NonFinite("square root at zero has no derivative")
    return chain(u, s, 0.5 / s, -0.25 / (s * u.v))


def sin(u: Jet) -> Jet:
    s, c = np.sin(u.v), np.cos(u.v)
    return chain(u, s, c, -s)


def cos(u: Jet) -> Jet:
    s, c = np.sin(u.v), np.cos(u.v)
    return chain(u, c, -s, -c)


def sinh(u: Jet) -> Jet:
    s, c = np.sinh(u.v), np.cosh(u.v)
    return chain(u, s, c, s)


def cosh(u: Jet) -> Jet:
    s, c = np.sinh(u.v), np.cosh(u.v)
    return chain(u, c, s, c)


def tan(u: Jet) -> Jet:
    t = np.tan(u.v)
    sec2 = 1.0 + t * t
    return chain(u, t, sec2, 2.0 * t * sec2)


def absolute(u: Jet) -> Jet:
    if u.g and _any(u.v == 0):
        raise NonFinite("abs is not differentiable at zero")
    s = np.sign(u.v)
    return chain(u, np.abs(u.v), s, ZERO)


UNARY = {
    "neg": neg,
    "exp": exp,
    "ln": log,
    "sqrt": sqrt,
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "tan": tan,
    "abs": absolute,
}

BINARY = {"add": add, "sub": sub, "mul": mul, "div": div, "pow": power}


def jet_arith(op: str, a: Jet, b: Jet) -> Jet:
    """Binary jet operation by name (``add``, ``sub``, ``mul``, ``div``, ``pow``)."""
    return BINARY[op](a, b)


def jet_chain(f: Callable, u: Jet) -> Jet:
    """Apply ``f`` returning ``(f, f', f'')`` at ``u.v``."""
    f0, f1, f2 = f(u.v)
    return chain(u, f0, f1, f2)


def seeds(t, x) -> tuple[Jet, Jet]:
    """The two independent-variable jets of a ``(t, x)`` evaluation."""
    return Jet.seed(t, 0, 2), Jet.seed(x, 1, 2)


def finite_or_raise(j: Jet, what: str = "value", span=None) -> Jet:
    for c in (j.v, *j.g, *j.h):
        if not np.all(np.isfinite(c)):
            raise NonFinite(f"non-finite {what}", span)
    return j


__all__ = [
    "Jet",
    "add",
    "sub",
    "mul",
    "div",
    "neg",
    "scale",
    "chain",
    "power",
    "powi",
    "powr",
    "exp",
    "log",
    "sqrt",
    "jet_arith",
    "jet_chain",
    "seeds",
    "UNARY",
    "BINARY",
]

