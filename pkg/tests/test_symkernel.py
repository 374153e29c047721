import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lastmult.errors import InconclusiveError, PoleError, StructuralError, UnboundSymbolError
from lastmult.symkernel import (
    I,
    SampleDomain,
    Sym,
    arctan,
    as_expr,
    canon,
    cos,
    cot,
    csc,
    differentiate,
    equiv,
    equiv_up_to_constant,
    evaluate,
    evaluate_array,
    exp,
    from_prefix,
    log,
    mul,
    power,
    sample_points,
    sec,
    sin,
    substitute,
    tan,
    to_prefix,
)

x, t, k, u1, u2, p, f1, g = (Sym(n) for n in ("x", "t", "k", "u1", "u2", "p", "f1", "g"))


def leaf():
    return st.one_of(
        st.sampled_from([x, t]),
        st.integers(-3, 3).map(as_expr),
    )


def extend(children):
    return st.one_of(
        st.tuples(children, children).map(lambda ab: ab[0] + ab[1]),
        st.tuples(children, children).map(lambda ab: ab[0] * ab[1]),
        st.tuples(children, st.integers(0, 3)).map(lambda ab: ab[0] ** ab[1]),
        children.map(sin),
        children.map(cos),
        children.map(lambda e: exp(e / 4)),
        children.map(arctan),
    )


exprs = st.recursive(leaf(), extend, max_leaves=8)


def test_power_rule():
    assert differentiate(x**2, "x") == 2 * x


def test_chain_rule_gaussian():
    e = exp(-(x**2) / 2)
    assert differentiate(e, "x") == -x * e


def test_sec_squared_matches_central_difference():
    e = sec(k * t) ** 2
    d = differentiate(e, "t")
    assert equiv(d, 2 * k * sec(k * t) ** 2 * tan(k * t))
    h = 1e-6
    fd = (evaluate(e, {"t": 0.3 + h, "k": 1.0}) - evaluate(e, {"t": 0.3 - h, "k": 1.0})) / (2 * h)
    assert abs(evaluate(d, {"t": 0.3, "k": 1.0}) - fd) < 1e-8


def test_other_symbols_are_constants():
    assert differentiate(k * x + t, "x") == k


def test_all_builtins_differentiate():
    for fn in (exp, sin, cos, tan, cot, sec, csc, log, arctan):
        e = fn(x)
        d = differentiate(e, "x")
        h = 1e-6
        for x0 in (0.4, 0.9, 1.3):
            fd = (evaluate(e, {"x": x0 + h}) - evaluate(e, {"x": x0 - h})) / (2 * h)
            assert abs(evaluate(d, {"x": x0}) - fd) < 1e-7 * (1 + abs(fd))


def test_euler_identity():
    assert abs(evaluate(exp(I * math.pi), {}) + 1) < 1e-15


def test_jlm34_value():
    e = 1 / (u2**2 + k**2 * u1**2)
    assert evaluate(e, {"u1": 1, "u2": 0, "k": 2}) == pytest.approx(0.25)


def test_ground_state_at_origin():
    u0 = exp(-I * t / 2 - x**2 / 2)
    assert evaluate(u0, {"t": 0, "x": 0}) == 1


def test_unbound_symbol_named():
    with pytest.raises(UnboundSymbolError, match="u2"):
        evaluate(u1 + u2, {"u1": 1.0})


def test_pole_raises():
    with pytest.raises(PoleError):
        evaluate(1 / x, {"x": 0.0})
    with pytest.raises(PoleError):
        evaluate(tan(x), {"x": math.pi / 2})


def test_array_pole_nan_when_not_strict():
    vals = evaluate_array(1 / x, {"x": np.array([0.0, 2.0])}, strict=False)
    assert np.isnan(vals[0]) and vals[1] == 0.5


def test_substitute_expands():
    assert substitute(x**2, "x", t + 1) == t**2 + 2 * t + 1


def test_substitute_momentum():
    e = substitute(u2**2 + k**2 * u1**2, "u2", p - f1)
    assert e == p**2 - 2 * p * f1 + f1**2 + k**2 * u1**2


def test_substitute_merges_exponentials():
    e = substitute(exp(-(x**2) / 2) * g, "g", exp(-I * t / 2))
    assert e == exp(-I * t / 2 - x**2 / 2)


def test_pythagorean_identity():
    assert equiv(sin(k * t) ** 2 + cos(k * t) ** 2, 1)


def test_distinct_expressions_not_equiv():
    assert not equiv(x, x + 1)


def test_equiv_needs_eight_samples():
    with pytest.raises(ValueError):
        equiv(x, x, samples=4)


def test_equiv_all_poles_inconclusive():
    dom = SampleDomain(box=(0.0, 0.0))
    with pytest.raises(InconclusiveError):
        equiv(1 / x, 1 / x, domain=dom)


def test_equiv_up_to_constant_examples():
    e = exp(-(x**2) / 2)
    assert equiv_up_to_constant(2 * x * e, x * e) == pytest.approx(2)
    assert equiv_up_to_constant(sin(x), cos(x)) is None


def test_sampling_deterministic_and_in_box():
    dom = SampleDomain(boxes={"x": (-1.0, 1.0)})
    a = sample_points({"x", "t"}, 32, 7, dom)
    b = sample_points({"x", "t"}, 32, 7, dom)
    assert np.array_equal(a["x"], b["x"])
    assert a["x"].min() >= -1 and a["x"].max() <= 1
    assert a["t"].min() >= 0.3 and a["t"].max() <= 2.0


def test_where_filter_respected():
    dom = SampleDomain(box=(-1.0, 1.0), where=lambda pts: pts["x"] > 0)
    assert (sample_points({"x"}, 40, 0, dom)["x"] > 0).all()


def test_identities_applied():
    assert x + 0 == x
    assert x * 1 == x
    assert x * 0 == as_expr(0)
    assert x**0 == as_expr(1)


def test_builtin_basis_closed():
    from lastmult.symkernel import apply_fn

    with pytest.raises(StructuralError):
        apply_fn("sinh", x)


def test_rational_power_principal_branch():
    assert evaluate(power(x, 0.5), {"x": -4}) == pytest.approx(cmath.sqrt(-4))


def test_prefix_example():
    e = from_prefix("(+ (* 2 x) (exp (* -1/2 (^ x 2))))")
    assert e == 2 * x + exp(-(x**2) / 2)


def test_prefix_complex_constant():
    e = mul(I, 3, t)
    assert from_prefix(to_prefix(e)) == e


@settings(max_examples=60, deadline=None)
@given(exprs)
def test_canon_idempotent(e):
    assert canon(canon(e)) == canon(e)


@settings(max_examples=60, deadline=None)
@given(exprs)
def test_prefix_round_trip(e):
    assert from_prefix(to_prefix(e)) == e


@settings(max_examples=40, deadline=None)
@given(exprs, exprs, st.integers(-3, 3))
def test_derivative_linear(a, b, c):
    lhs = differentiate(a + c * b, "x")
    rhs = differentiate(a, "x") + c * differentiate(b, "x")
    assert equiv(lhs, rhs, tol=1e-8)


@settings(max_examples=40, deadline=None)
@given(exprs)
def test_derivative_matches_finite_difference(e):
    d = differentiate(e, "x")
    pts = sample_points({"x", "t"}, 64, 1)
    h = 1e-6
    hi = evaluate_array(e, {"x": pts["x"] + h, "t": pts["t"]})
    lo = evaluate_array(e, {"x": pts["x"] - h, "t": pts["t"]})
    fd = (hi - lo) / (2 * h)
    exact = evaluate_array(d, pts)
    assert np.all(np.abs(exact - fd) <= 1e-6 * (1 + np.abs(exact) + np.abs(evaluate_array(e, pts))))


@settings(max_examples=40, deadline=None)
@given(exprs, exprs)
def test_substitute_commutes_with_evaluate(e, r):
    b = {"x": 0.7, "t": 1.1}
    lhs = evaluate(substitute(e, "x", r), b)
    rhs = evaluate(e, {"t": 1.1, "x": evaluate(r, b)})
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(rhs))


@settings(max_examples=40, deadline=None)
@given(exprs)
def test_equiv_reflexive_symmetric(a):
    twin = a + sin(x) ** 2 + cos(x) ** 2 - 1
    assert equiv(a, a)
    assert equiv(a, twin) and equiv(twin, a)
    assert equiv(a, a + 1) == equiv(a + 1, a) == False  # noqa: E712


@settings(max_examples=30, deadline=None)
@given(exprs)
def test_self_ratio_is_one(e):
    vals = evaluate_array(e, sample_points(e.free_symbols or {"x"}, 32, 0)) if e.free_symbols else np.array([evaluate(e, {})])
    if np.all(np.abs(vals) > 0):
        assert equiv_up_to_constant(e, e) == pytest.approx(1)
