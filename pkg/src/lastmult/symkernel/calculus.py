"""Exact differentiation and substitution on canonical trees."""

from __future__ import annotations

from functools import lru_cache

from lastmult.errors import StructuralError
from lastmult.symkernel.expr import (
    Add,
    Apply,
    Const,
    Expr,
    Mul,
    Pow,
    Sym,
    ZERO,
    add,
    apply_fn,
    as_expr,
    cos,
    cot,
    csc,
    exp,
    mul,
    power,
    sec,
    sin,
    tan,
)


def _name(var) -> str:
    if isinstance(var, Sym):
        return var.name
    if isinstance(var, str):
        return var
    raise StructuralError(f"differentiation variable must be a symbol, got {var!r}")


def differentiate(e: Expr, var, order: int = 1) -> Expr:
    """Partial derivative of ``e`` with respect to the symbol ``var``."""
    name = _name(var)
    e = as_expr(e)
    for _ in range(order):
        e = _diff(e, name)
    return e


@lru_cache(maxsize=200_000)
def _diff(e: Expr, name: str) -> Expr:
    if name not in e.free_symbols:
        return ZERO
    if isinstance(e, Sym):
        return Const(1)
    if isinstance(e, Add):
        return add(*(_diff(t, name) for t in e.terms))
    if isinstance(e, Mul):
        fs = e.factors
        parts = []
        for i, f in enumerate(fs):
            df = _diff(f, name)
            if isinstance(df, Const) and df.value == 0:
                continue
            parts.append(mul(*fs[:i], df, *fs[i + 1 :]))
        return add(*parts)
    if isinstance(e, Pow):
        return mul(e.exp, power(e.base, e.exp - 1), _diff(e.base, name))
    if isinstance(e, Apply):
        return mul(_outer_derivative(e.fn, e.arg), _diff(e.arg, name))
    raise StructuralError(f"cannot differentiate node of kind {e.kind!r}: {e!r}")


def _outer_derivative(fn: str, a: Expr) -> Expr:
    if fn == "exp":
        return exp(a)
    if fn == "sin":
        return cos(a)
    if fn == "cos":
        return -sin(a)
    if fn == "tan":
        return power(sec(a), 2)
    if fn == "cot":
        return -power(csc(a), 2)
    if fn == "sec":
        return mul(sec(a), tan(a))
    if fn == "csc":
        return -mul(csc(a), cot(a))
    if fn == "log":
        return power(a, -1)
    if fn == "arctan":
        return power(add(1, power(a, 2)), -1)
    raise StructuralError(f"no derivative rule for {fn!r}")


def substitute(e: Expr, var, replacement) -> Expr:
    """Replace every occurrence of ``var`` by ``replacement`` and re-canonicalize."""
    return substitute_all(e, {_name(var): as_expr(replacement)})


def substitute_all(e: Expr, mapping: dict) -> Expr:
    """Simultaneous substitution ``{name: Expr}``; capture-free since trees have no binders."""
    mapping = {_name(k): as_expr(v) for k, v in mapping.items()}
    if not mapping:
        return e
    return _subst(as_expr(e), tuple(sorted(mapping.items(), key=lambda kv: kv[0])))


@lru_cache(maxsize=200_000)
def _subst(e: Expr, items: tuple) -> Expr:
    names = {k for k, _ in items}
    if not (e.free_symbols & names):
        return e
    if isinstance(e, Sym):
        return dict(items)[e.name]
    if isinstance(e, Add):
        return add(*(_subst(t, items) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(_subst(f, items) for f in e.factors))
    if isinstance(e, Pow):
        return power(_subst(e.base, items), e.exp)
    if isinstance(e, Apply):
        return apply_fn(e.fn, _subst(e.arg, items))
    raise StructuralError(f"cannot substitute into node {e!r}")


def total_derivative(e: Expr, time: str, flow: dict) -> Expr:
    """``d/dt`` along a vector field: ``de/dt + sum_j flow[j] * de/dj``."""
    parts = [differentiate(e, time)]
    for name, rate in flow.items():
        parts.append(mul(as_expr(rate), differentiate(e, name)))
    return add(*parts)
