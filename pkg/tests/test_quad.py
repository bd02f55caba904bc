import math

import numpy as np
import pytest

from exactpde.evaluate import EvalEnv, eval_expr
from exactpde.expr import parse
from exactpde.jet import Jet
from exactpde.quad import QuadConfig, adaptive, integrate


def test_polynomials_exact():
    vals, err = adaptive(lambda s: [s**7, np.ones_like(s)], 0.0, 2.0)
    assert vals[0] == pytest.approx(2.0**8 / 8, rel=1e-15)
    assert vals[1] == pytest.approx(2.0)
    assert err < 1e-10


def test_adaptive_refines_peaked_integrand():
    f = lambda s: [1.0 / (1e-3 + (s - 0.3) ** 2)]
    vals, err = adaptive(f, 0.0, 1.0, QuadConfig(1e-11, 1e-11))
    exact = (math.atan(0.7 / math.sqrt(1e-3)) + math.atan(0.3 / math.sqrt(1e-3))) / math.sqrt(1e-3)
    assert abs(vals[0] - exact) <= 1e-9 * exact


def test_batched_integrands():
    c = np.array([1.0, 2.0, 3.0])
    vals, _ = adaptive(lambda s: [np.exp(c * s[:, None])], 0.0, 1.0, batch_shape=(3,))
    assert np.allclose(vals[0], (np.exp(c) - 1) / c, rtol=1e-14)


def test_doubling_subdivisions_is_within_error():
    f = lambda s: [np.sin(30 * s) * np.exp(s)]
    v1, e1 = adaptive(f, 0.0, 2.0, QuadConfig(max_subdivisions=2000))
    v2, _ = adaptive(f, 0.0, 2.0, QuadConfig(max_subdivisions=4000))
    assert abs(v1[0] - v2[0]) <= max(e1, 1e-15)


def test_integrate_jets_matches_integral_node():
    # constant upper limit, x-free integrand: both code paths must agree exactly
    node = parse("int(s = 0.2 .. 1.5, exp(s)*sin(s))")
    via_node = eval_expr(node, EvalEnv.at(0.7, 0.4)).v
    via_integrate = integrate(lambda s: Jet(np.exp(s) * np.sin(s)), 0.2, 1.5).v
    assert via_node == pytest.approx(via_integrate, rel=1e-15)


def test_leibniz_rule_for_variable_limits():
    e = parse("int(s = 0 .. t*x, s^2 + x*s)")
    j = eval_expr(e, EvalEnv.at(0.8, 0.5))
    # I = (tx)^3/3 + x (tx)^2/2
    t, x = 0.8, 0.5
    assert j.v == pytest.approx((t * x) ** 3 / 3 + x * (t * x) ** 2 / 2, rel=1e-13)
    assert j.d_t == pytest.approx(t * t * x**3 + x**3 * t, rel=1e-13)
    assert j.d_tx == pytest.approx(3 * t * t * x * x + 3 * x * x * t, rel=1e-12)


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        QuadConfig(abs_tol=0.0)
