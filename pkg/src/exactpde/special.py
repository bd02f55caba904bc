"""Special functions on floats, arrays and jets.

Lambert W and the Kummer series are implemented here; ``erf`` and ``E1``
come from :mod:`scipy.special`.  Every jet rule only needs the value and
first two derivatives with respect to the (last) argument.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

from . import jet as J
from .errors import ConvergenceFailure, DomainError, NonFinite
from .jet import Jet

INV_E = math.exp(-1.0)
_TWO_OVER_SQRTPI = 2.0 / math.sqrt(math.pi)


# ------------------------------------------------------------- Lambert W


def _w_initial(z: np.ndarray, branch: int) -> np.ndarray:
    p = np.sqrt(np.maximum(2.0 * (math.e * z + 1.0), 0.0))
    if branch == -1:
        p = -p
    near = -1.0 + p - p * p / 3.0 + (11.0 / 72.0) * p**3
    if branch == 0:
        lz = np.log1p(np.maximum(z, -0.9))
        mid = lz * (1.0 - np.log1p(np.maximum(lz, -0.9)) / (2.0 + lz))
        L1 = np.log(np.maximum(z, 3.0))
        L2 = np.log(L1)
        far = L1 - L2 + L2 / L1
        w = np.where(z < -0.25, near, np.where(z < 3.0, mid, far))
    else:
        L1 = np.log(np.clip(-z, 1e-300, INV_E))
        L2 = np.log(-L1)
        far = L1 - L2 + L2 / L1
        w = np.where(z < -0.25, near, far)
    return w


def lambertw(z, branch: int = 0):
    """Real Lambert W on branch ``0`` (``z >= -1/e``) or ``-1`` (``-1/e <= z < 0``)."""
    if branch not in (0, -1):
        raise ValueError("branch must be 0 or -1")
    za = np.asarray(z, dtype=float)
    bad = za < -INV_E * (1 + 4e-16)
    if branch == -1:
        bad |= za >= 0
    if J._STRICT[-1] and np.any(bad):
        raise DomainError(f"lambertw branch {branch} outside its real domain")
    zc = np.where(bad, np.nan, np.maximum(za, -INV_E))
    w = _w_initial(zc, branch)
    with np.errstate(all="ignore"):
        for _ in range(30):
            ew = np.exp(w)
            f = w * ew - zc
            wp1 = w + 1.0
            denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
            step = np.where(denom != 0, f / denom, 0.0)
            step = np.where(np.isfinite(step), step, 0.0)
            w = w - step
            if np.all((np.abs(step) <= 1e-15 * (1.0 + np.abs(w))) | np.isnan(w)):
                break
        # the branch point itself
        w = np.where(zc == -INV_E, -1.0, w)
        if branch == 0:
            w = np.where(zc == 0.0, 0.0, w)
    return w if isinstance(z, np.ndarray) else float(w)


def lambertw_jet(u: Jet, branch: int = 0) -> Jet:
    w = lambertw(np.asarray(u.v, dtype=float), branch)
    if not u.g:
        return Jet(w)
    if J._STRICT[-1] and np.any(w == -1.0):
        raise NonFinite("lambertw derivative is infinite at the branch point")
    with np.errstate(all="ignore") if not J._STRICT[-1] else _null():
        d1 = 1.0 / (np.exp(w) * (1.0 + w))
        d2 = -(2.0 + w) * d1 * d1 / (1.0 + w)
    return J.chain(u, w, d1, d2)


class _null:
    def __enter__(self):
        return self

    def __exit__(self, *a):
        return False


# ---------------------------------------------------------- erf and E1


def erf(z):
    return _sp.erf(z)


def erf_jet(u: Jet) -> Jet:
    v = u.v
    f0 = _sp.erf(v)
    if not u.g:
        return Jet(f0)
    f1 = _TWO_OVER_SQRTPI * np.exp(-v * v)
    return J.chain(u, f0, f1, -2.0 * v * f1)


def expint1(z):
    """Exponential integral ``E1(z) = int_1^inf exp(-z s)/s ds`` for ``z > 0``."""
    za = np.asarray(z, dtype=float)
    if J._STRICT[-1] and np.any(za <= 0):
        raise DomainError("expint1 needs a positive argument")
    with np.errstate(all="ignore"):
        out = _sp.exp1(np.where(za > 0, za, np.nan))
    return out if isinstance(z, np.ndarray) else float(out)


def expint1_jet(u: Jet) -> Jet:
    v = u.v
    f0 = expint1(v)
    if not u.g:
        return Jet(f0)
    e = np.exp(-v)
    return J.chain(u, f0, -e / v, e * (1.0 / v + 1.0 / (v * v)))


# ------------------------------------------------- Kummer and Whittaker

_KUMMER_MAX_TERMS = 4000


def _kummer_series(a, b, z):
    """Maclaurin series of M(a, b, z); callers keep ``z`` non-negative."""
    a, b, z = np.broadcast_arrays(np.asarray(a, float), np.asarray(b, float), np.asarray(z, float))
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(_KUMMER_MAX_TERMS):
        term = term * (a + k) / (b + k) * z / (k + 1)
        total = total + term
        small = np.abs(term) <= 1e-17 * np.abs(total)
        if np.all(small | (term == 0) | ~np.isfinite(total)):
            return total
    raise ConvergenceFailure("Kummer series did not converge")


def kummer_m(a, b, z):
    """Confluent hypergeometric ``M(a, b, z) = 1F1(a; b; z)``.

    Negative ``z`` uses Kummer's transformation so the series never
    cancels.
    """
    b_arr = np.asarray(b, float)
    if np.any((b_arr <= 0) & (b_arr == np.round(b_arr))):
        raise DomainError("kummerM needs b not a non-positive integer")
    z_arr = np.asarray(z, float)
    a_arr = np.asarray(a, float)
    neg = z_arr < 0
    with np.errstate(all="ignore"):
        pos_val = _kummer_series(a_arr, b_arr, np.where(neg, 0.0, z_arr))
        if np.any(neg):
            tr = np.exp(z_arr) * _kummer_series(b_arr - a_arr, b_arr, np.where(neg, -z_arr, 0.0))
            pos_val = np.where(neg, tr, pos_val)
    if not any(isinstance(v, np.ndarray) for v in (a, b, z)):
        return float(pos_val)
    return pos_val


def _direction_free(j: Jet, what: str):
    if any(not J._is_zero(c) and np.any(c) for c in j.g):
        raise DomainError(f"{what} may not depend on t, x or a root unknown")
    return j.v


def kummer_jet(a: Jet, b: Jet, z: Jet) -> Jet:
    av = _direction_free(a, "kummerM parameter a")
    bv = _direction_free(b, "kummerM parameter b")
    f0 = kummer_m(av, bv, z.v)
    if not z.g:
        return Jet(f0)
    f1 = av / bv * kummer_m(av + 1.0, bv + 1.0, z.v)
    f2 = av * (av + 1.0) / (bv * (bv + 1.0)) * kummer_m(av + 2.0, bv + 2.0, z.v)
    return J.chain(z, f0, f1, f2)


def whittaker_m(kappa, mu, z):
    """Whittaker ``M_{kappa,mu}(z) = exp(-z/2) z^(mu+1/2) M(mu-kappa+1/2, 1+2mu, z)`` for ``z > 0``."""
    za = np.asarray(z, float)
    if np.any(za <= 0):
        raise DomainError("whitM needs a positive argument")
    out = np.exp(-za / 2) * za ** (np.asarray(mu) + 0.5) * kummer_m(np.asarray(mu) - kappa + 0.5, 1 + 2 * np.asarray(mu), za)
    return out if isinstance(z, np.ndarray) else float(out)


def whittaker_jet(kappa: Jet, mu: Jet, z: Jet) -> Jet:
    kv = _direction_free(kappa, "whitM parameter kappa")
    mv = _direction_free(mu, "whitM parameter mu")
    pref = J.mul(J.exp(J.scale(z, -0.5)), J.powr(z, mv + 0.5))
    return J.mul(pref, kummer_jet(Jet(mv - kv + 0.5), Jet(1.0 + 2.0 * mv), z))


# ------------------------------------------------------------- dispatch


def apply_special(kind: str, args: list[Jet]) -> Jet:
    if kind == "lambertw0":
        return lambertw_jet(args[0], 0)
    if kind == "lambertwm1":
        return lambertw_jet(args[0], -1)
    if kind == "erf":
        return erf_jet(args[0])
    if kind == "expint1":
        return expint1_jet(args[0])
    if kind == "kummerM":
        return kummer_jet(*args)
    if kind == "whitM":
        return whittaker_jet(*args)
    raise KeyError(kind)
