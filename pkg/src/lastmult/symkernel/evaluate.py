"""Numerical evaluation of expression trees over complex scalars or arrays."""

from __future__ import annotations

import numpy as np

from lastmult.errors import PoleError, StructuralError, UnboundSymbolError
from lastmult.symkernel import numbers as nb
from lastmult.symkernel.expr import Add, Apply, Const, Expr, Mul, Pow, Sym

# |cos z| or |sin z| below this (relative to 1 + |z|) counts as a pole of tan/sec/cot/csc.
TRIG_POLE_EPS = 4 * np.finfo(float).eps


class _PoleMask:
    """Collects pole flags while walking the tree in lenient mode."""

    def __init__(self, shape, strict):
        self.bad = np.zeros(shape, dtype=bool)
        self.strict = strict

    def flag(self, mask, what):
        mask = np.asarray(mask)
        if not mask.any():
            return
        if self.strict:
            idx = int(np.flatnonzero(np.broadcast_to(mask, self.bad.shape))[0]) if self.bad.shape else None
            raise PoleError(f"pole in {what}", location=what, index=idx)
        self.bad |= np.broadcast_to(mask, self.bad.shape)


def _walk(e: Expr, env: dict, poles: _PoleMask):
    if isinstance(e, Const):
        return complex(e.value)
    if isinstance(e, Sym):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundSymbolError(e.name) from None
    if isinstance(e, Add):
        total = _walk(e.terms[0], env, poles)
        for t in e.terms[1:]:
            total = total + _walk(t, env, poles)
        return total
    if isinstance(e, Mul):
        prod = _walk(e.factors[0], env, poles)
        for f in e.factors[1:]:
            prod = prod * _walk(f, env, poles)
        return prod
    if isinstance(e, Pow):
        b = np.asarray(_walk(e.base, env, poles), dtype=complex)
        n = e.exp
        if n < 0:
            zero = b == 0
            poles.flag(zero, f"power {n} of zero base")
            b = np.where(zero, 1.0, b)
        if n.denominator == 1:
            return b ** int(n)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(float(n) * np.log(np.where(b == 0, 1.0, b)))
        return np.where(b == 0, 0.0, out)
    if isinstance(e, Apply):
        a = np.asarray(_walk(e.arg, env, poles), dtype=complex)
        return _apply(e.fn, a, poles)
    raise StructuralError(f"cannot evaluate node {e!r}")


def _near_zero(v, a):
    return np.abs(v) <= TRIG_POLE_EPS * (1.0 + np.abs(a))


def _apply(fn, a, poles):
    if fn == "exp":
        return np.exp(a)
    if fn == "sin":
        return np.sin(a)
    if fn == "cos":
        return np.cos(a)
    if fn in ("tan", "sec"):
        c = np.cos(a)
        bad = _near_zero(c, a)
        poles.flag(bad, f"{fn} at cos(arg)=0")
        c = np.where(bad, 1.0, c)
        return np.sin(a) / c if fn == "tan" else 1.0 / c
    if fn in ("cot", "csc"):
        s = np.sin(a)
        bad = _near_zero(s, a)
        poles.flag(bad, f"{fn} at sin(arg)=0")
        s = np.where(bad, 1.0, s)
        return np.cos(a) / s if fn == "cot" else 1.0 / s
    if fn == "log":
        bad = a == 0
        poles.flag(bad, "log at 0")
        return np.log(np.where(bad, 1.0, a))
    if fn == "arctan":
        bad = (a == 1j) | (a == -1j)
        poles.flag(bad, "arctan at +-i")
        return np.arctan(np.where(bad, 0.0, a))
    raise StructuralError(f"unknown function {fn!r}")


def evaluate(e: Expr, bindings: dict) -> complex:
    """Exact recursive complex evaluation at one point.

    Every free symbol must be bound; poles raise :class:`PoleError`.
    """
    missing = e.free_symbols - set(bindings)
    if missing:
        raise UnboundSymbolError(sorted(missing)[0])
    env = {k: complex(v) for k, v in bindings.items()}
    poles = _PoleMask((), strict=True)
    with np.errstate(all="ignore"):
        value = complex(np.asarray(_walk(e, env, poles)))
    if not np.isfinite(value):
        raise PoleError(f"non-finite value {value} at {bindings}", location=dict(bindings))
    return value


def evaluate_array(e: Expr, bindings: dict, strict: bool = True) -> np.ndarray:
    """Vectorized evaluation over broadcastable arrays of symbol values.

    With ``strict=False`` pole locations come back as NaN instead of raising.
    """
    missing = e.free_symbols - set(bindings)
    if missing:
        raise UnboundSymbolError(sorted(missing)[0])
    env = {k: np.asarray(v, dtype=complex) for k, v in bindings.items()}
    shape = np.broadcast_shapes(*(v.shape for v in env.values())) if env else ()
    poles = _PoleMask(shape, strict)
    with np.errstate(all="ignore"):
        out = np.broadcast_to(np.asarray(_walk(e, env, poles), dtype=complex), shape).copy()
    nonfinite = ~np.isfinite(out)
    if strict and nonfinite.any():
        idx = int(np.flatnonzero(nonfinite)[0]) if shape else None
        raise PoleError("non-finite value", index=idx)
    out[poles.bad | nonfinite] = np.nan
    return out


def is_number(z) -> bool:
    return isinstance(z, (int, float, complex)) or nb.is_exact(z)


_FAST_FN = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "cot": lambda a: 1 / np.tan(a),
    "sec": lambda a: 1 / np.cos(a),
    "csc": lambda a: 1 / np.sin(a),
    "log": np.log,
    "arctan": np.arctan,
}


def compile_expr(e: Expr, names: tuple):
    """Closure ``f(*values)`` evaluating ``e`` without pole bookkeeping.

    Meant for hot loops (time stepping); callers check finiteness themselves.
    """
    pos = {n: i for i, n in enumerate(names)}
    missing = e.free_symbols - set(names)
    if missing:
        raise UnboundSymbolError(sorted(missing)[0])

    def build(node):
        if isinstance(node, Const):
            v = complex(node.value)
            v = v.real if v.imag == 0 else v
            return lambda args: v
        if isinstance(node, Sym):
            i = pos[node.name]
            return lambda args: args[i]
        if isinstance(node, Add):
            parts = [build(t) for t in node.terms]
            return lambda args: sum(p(args) for p in parts)
        if isinstance(node, Mul):
            parts = [build(f) for f in node.factors]

            def prod(args):
                out = parts[0](args)
                for p in parts[1:]:
                    out = out * p(args)
                return out

            return prod
        if isinstance(node, Pow):
            b = build(node.base)
            n = node.exp
            if n.denominator == 1:
                m = int(n)
                return lambda args: b(args) ** m if m > 0 else 1 / b(args) ** (-m)
            fn = float(n)
            return lambda args: np.exp(fn * np.log(np.asarray(b(args), dtype=complex)))
        if isinstance(node, Apply):
            a = build(node.arg)
            f = _FAST_FN[node.fn]
            return lambda args: f(a(args))
        raise StructuralError(f"cannot compile node {node!r}")

    body = build(e)
    return lambda *values: body(values)
