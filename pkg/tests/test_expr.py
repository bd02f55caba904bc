import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactpde.errors import ExprSyntaxError, UnboundName, ValidationError
from exactpde.evaluate import EvalEnv, eval_expr
from exactpde.expr import (
    ArbFn,
    Binary,
    Integral,
    Param,
    Root,
    additive_terms,
    free_names,
    integral_depth,
    parse,
    to_text,
    validate_residual,
    validate_solution,
)


def value(src, t=0.7, x=0.4, **params):
    return eval_expr(parse(src, set(params)), EvalEnv.at(t, x, params, jets=False)).v


def test_precedence_and_associativity():
    assert value("1 + 2*3^2") == 19
    assert value("2^3^2") == 2 ** 9
    assert value("-2^2") == -4
    assert value("8/4/2") == 1
    assert value("10 - 4 - 3") == 3


def test_params_vs_variables():
    e = parse("a*t + x + F(t)*w_x", {"a"})
    assert free_names(e) == {"a", "F", "w_x"}
    assert value("a*t + x", a=2.0) == pytest.approx(1.8)


def test_arbitrary_function_derivatives_parse():
    e = parse("F'''(t) + G''(x)")
    fns = [n for n in [e.lhs, e.rhs]]
    assert isinstance(fns[0], ArbFn) and fns[0].order == 3
    assert isinstance(fns[1], ArbFn) and fns[1].order == 2


def test_integral_and_root_nodes():
    e = parse("int(tau = 0.5 .. t, tau^2)")
    assert isinstance(e, Integral) and e.dummy == "tau"
    assert value("int(tau = 0 .. t, tau^2)", t=0.9) == pytest.approx(0.9**3 / 3, rel=1e-13)
    r = parse("root(W in [0, 2] : W^2 - x ; W + 1)")
    assert isinstance(r, Root)
    assert value("root(W in [0, 2] : W^2 - x ; W + 1)", x=0.49) == pytest.approx(1.7, rel=1e-14)


def test_integral_depth():
    assert integral_depth(parse("int(s = 0 .. t, int(r = 0 .. s, r))")) == 2
    assert integral_depth(parse("t + x")) == 0


@pytest.mark.parametrize(
    "src",
    ["1 +", "exp(", "F''''(t)", "int(tau = 0 .. t tau)", "root(W in [0] : W ; W)", "2 $ 3", "sin(1, 2)"],
)
def test_syntax_errors(src):
    with pytest.raises(ExprSyntaxError):
        parse(src)


def test_binder_may_not_shadow_parameter():
    with pytest.raises(ExprSyntaxError):
        parse("int(a = 0 .. t, a)", {"a"})


def test_binder_used_outside_scope():
    with pytest.raises(UnboundName):
        parse("int(s = 0 .. t, s) + s")


def test_field_variables_only_in_residuals():
    validate_residual(parse("w_tx - w*w_x"))
    with pytest.raises(ValidationError):
        validate_solution(parse("w_t + t"))


def test_additive_terms_signs_and_constant_factors():
    terms = additive_terms(parse("w_tx - 2*w_x + (w - w_t)*3"))
    # constant factors distribute over inner sums
    assert [s for s, _ in terms] == [1.0, -2.0, 3.0, -3.0]
    assert [to_text(t) for _, t in terms] == ["w_tx", "w_x", "w", "w_t"]


def test_error_carries_span():
    with pytest.raises(ExprSyntaxError) as ei:
        parse("t + * x")
    assert ei.value.span is not None


# ------------------------------------------------------------ round trip

_leaf = st.one_of(
    st.sampled_from(["t", "x", "a", "b", "F(t)", "G'(x)"]),
    st.integers(0, 9).map(str),
    st.floats(0.125, 8.0).map(lambda v: repr(round(v, 3))),
)


def _combine(children):
    bin_ = st.tuples(children, st.sampled_from(["+", "-", "*", "/", "^"]), children).map(
        lambda p: f"({p[0]}){p[1]}({p[2]})"
    )
    un = st.tuples(st.sampled_from(["exp", "sin", "sqrt", "-"]), children).map(lambda p: f"{p[0]}({p[1]})")
    integ = children.map(lambda c: f"int(s = 0.5 .. t, ({c})*s)")
    return st.one_of(bin_, un, integ)


@settings(max_examples=200, deadline=None)
@given(st.recursive(_leaf, _combine, max_leaves=12))
def test_print_parse_round_trip(src):
    e = parse(src, {"a", "b"})
    text = to_text(e)
    again = parse(text, {"a", "b"})
    assert to_text(again) == text
    assert again == e


def test_numbers_print_exactly():
    for v in (0.1, 1e-6, 2.5e10, 1 / 3):
        e = parse(to_text(parse(repr(v))))
        assert math.isclose(value(to_text(e)), v, rel_tol=0, abs_tol=0)
