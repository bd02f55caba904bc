import math

import numpy as np
import pytest

from exactpde.errors import NoBracket, SingularJacobian
from exactpde.evaluate import EvalEnv, eval_expr
from exactpde.expr import parse
from exactpde.implicit import solve_scalar


def ev(src, t=0.7, x=0.4, jets=True):
    return eval_expr(parse(src), EvalEnv.at(t, x, jets=jets))


def test_solve_scalar():
    r = solve_scalar(lambda w: w**3 - 2, 0.0, 2.0)
    assert r == pytest.approx(2 ** (1 / 3), abs=1e-15)
    with pytest.raises(NoBracket):
        solve_scalar(lambda w: w * w + 1, -1.0, 1.0)


def test_root_jet_via_implicit_function_theorem():
    # W^3 + W = t + x^2 has a unique real root
    j = ev("root(W in [-5, 5] : W^3 + W - t - x^2 ; W)")
    w = j.v
    assert w**3 + w == pytest.approx(0.7 + 0.16, abs=1e-14)
    wt = 1 / (3 * w * w + 1)
    assert j.d_t == pytest.approx(wt, rel=1e-13)
    assert j.d_x == pytest.approx(0.8 * wt, rel=1e-13)
    assert j.d_tt == pytest.approx(-6 * w * wt**3, rel=1e-12)


def test_explicit_solution_agrees():
    j = ev("root(W in [0, 3] : W^2 - t*x ; W)")
    ref = ev("sqrt(t*x)")
    for a, b in zip(j.components(), ref.components()):
        assert a == pytest.approx(b, rel=1e-13)


def test_batched_roots():
    t = np.linspace(0.6, 1.4, 5)[:, None]
    x = np.linspace(0.3, 1.1, 5)[None, :]
    j = eval_expr(parse("root(W in [-10, 10] : exp(W) - t - x ; W)"), EvalEnv.at(t, x))
    assert np.allclose(j.v, np.log(t + x), rtol=0, atol=1e-15)


def test_root_errors():
    with pytest.raises(NoBracket):
        ev("root(W in [0, 1] : W^2 + 1 ; W)")
    with pytest.raises(SingularJacobian):
        ev("root(W in [-1, 1] : W^3 ; W)")


def test_nested_root():
    # outer unknown V solves V = U + t where U solves U^2 = x
    j = ev("root(V in [-5, 5] : V - root(U in [0, 2] : U^2 - x ; U) - t ; V)")
    assert j.v == pytest.approx(0.7 + math.sqrt(0.4), abs=1e-14)
    assert j.d_xx == pytest.approx(-0.25 * 0.4**-1.5, rel=1e-12)
