"""Small symbolic engine: canonical trees, calculus, evaluation, sampling-based equality."""

from lastmult.symkernel.calculus import differentiate, substitute, substitute_all, total_derivative
from lastmult.symkernel.equiv import (
    SampleDomain,
    equiv,
    equiv_up_to_constant,
    is_constant,
    is_identically_zero,
    max_deviation,
    sample_points,
)
from lastmult.symkernel.evaluate import compile_expr, evaluate, evaluate_array
from lastmult.symkernel.expr import (
    BUILTINS,
    I,
    ONE,
    ZERO,
    Add,
    Apply,
    Const,
    Expr,
    Mul,
    Pow,
    Sym,
    add,
    apply_fn,
    arctan,
    as_expr,
    canon,
    const,
    cos,
    cot,
    csc,
    exp,
    log,
    mul,
    power,
    sec,
    sin,
    sqrt,
    symbols,
    tan,
)
from lastmult.symkernel.serialize import from_prefix, to_prefix

__all__ = [name for name in dir() if not name.startswith("_")]
