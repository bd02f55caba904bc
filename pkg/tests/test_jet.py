import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactpde import jet as J
from exactpde.errors import DivisionByZero, DomainError
from exactpde.evaluate import EvalEnv, eval_expr
from exactpde.expr import parse
from exactpde.jet import Jet


def tx(t=0.7, x=0.4):
    return J.seeds(t, x)


def test_product_and_quotient():
    t, x = tx()
    f = t * t * x / (1 + x)
    assert f.d_t == pytest.approx(2 * 0.7 * 0.4 / 1.4)
    assert f.d_tx == pytest.approx(2 * 0.7 / 1.4**2)
    assert f.d_xx == pytest.approx(-2 * 0.49 / 1.4**3)


def test_elementary_chain_rule():
    t, x = tx()
    f = J.exp(J.sin(t * x))
    u = 0.28
    assert f.d_t == pytest.approx(math.exp(math.sin(u)) * math.cos(u) * 0.4)
    dtx = math.exp(math.sin(u)) * (math.cos(u) + u * (math.cos(u) ** 2 - math.sin(u)))
    assert f.d_tx == pytest.approx(dtx)


def test_real_and_integer_powers():
    t, _ = tx()
    p = t ** 2.5
    assert p.d_tt == pytest.approx(2.5 * 1.5 * 0.7**0.5)
    q = (t - 1.0) ** 3  # negative base, integer exponent
    assert q.v == pytest.approx(-0.3**3)
    assert q.d_t == pytest.approx(3 * 0.09)


def test_domain_errors_are_raised():
    t, _ = tx()
    with pytest.raises(DomainError):
        J.log(t - 1.0)
    with pytest.raises(DivisionByZero):
        J.div(t, Jet(0.0))
    with pytest.raises(DomainError):
        J.powr(t - 1.0, 0.5)


def test_lenient_mode_propagates_nan():
    t, _ = tx()
    with J.lenient():
        v = J.log(t - 1.0).v
    assert math.isnan(v)


def test_broadcasting_batches():
    t, x = J.seeds(np.linspace(0.6, 1.4, 5)[:, None], np.linspace(0.3, 1.1, 4)[None, :])
    f = t * x
    assert np.shape(f.v) == (5, 4)
    assert np.all(f.d_tx == 1.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.2, 2.0))
def test_jets_match_central_differences(t0, x0):
    e = parse("exp(t*x)/(1 + t^2) + sqrt(x + t)*ln(1 + x)")
    j = eval_expr(e, EvalEnv.at(t0, x0))

    def f(t, x):
        return eval_expr(e, EvalEnv.at(t, x, jets=False)).v

    h = 1e-4
    ft = (f(t0 + h, x0) - f(t0 - h, x0)) / (2 * h)
    ftx = (f(t0 + h, x0 + h) - f(t0 + h, x0 - h) - f(t0 - h, x0 + h) + f(t0 - h, x0 - h)) / (4 * h * h)
    assert j.d_t == pytest.approx(ft, rel=1e-6, abs=1e-8)
    assert j.d_tx == pytest.approx(ftx, rel=1e-4, abs=1e-6)
