"""Fully parenthesized prefix text form of expression trees.

Grammar (whitespace separates tokens)::

    expr     := number | symbol | "(" head expr+ ")"
    head     := "+" | "*" | "^" | "exp" | "sin" | "cos" | "tan" | "cot"
              | "sec" | "csc" | "log" | "arctan"
    number   := rational                      real exact constant
              | "(c" rational rational ")"    exact complex re, im
              | "(f" float float ")"          inexact complex re, im
    rational := ["-"] digits ["/" digits]
    symbol   := letter (letter | digit | "_")*

``(^ base r)`` carries a rational exponent ``r``. Parsing rebuilds through
the canonical constructors, so ``parse(to_prefix(e)) == e``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from lastmult.errors import StructuralError
from lastmult.symkernel import numbers as nb
from lastmult.symkernel.expr import (
    BUILTINS,
    Add,
    Apply,
    Const,
    Expr,
    Mul,
    Pow,
    Sym,
    add,
    apply_fn,
    mul,
    power,
)


def to_prefix(e: Expr) -> str:
    if isinstance(e, Const):
        return nb.format_number(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Add):
        return "(+ " + " ".join(to_prefix(t) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "(* " + " ".join(to_prefix(f) for f in e.factors) + ")"
    if isinstance(e, Pow):
        return f"(^ {to_prefix(e.base)} {nb._fmt_fraction(e.exp)})"
    if isinstance(e, Apply):
        return f"({e.fn} {to_prefix(e.arg)})"
    raise StructuralError(f"cannot serialize {e!r}")


_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_SYMBOL = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise StructuralError(f"bad character at {pos} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def from_prefix(text: str) -> Expr:
    toks = _tokens(text)
    expr, pos = _parse(toks, 0)
    if pos != len(toks):
        raise StructuralError(f"trailing tokens in {text!r}")
    return expr


def _parse(toks, pos):
    if pos >= len(toks):
        raise StructuralError("unexpected end of input")
    tok = toks[pos]
    if tok == ")":
        raise StructuralError("unexpected ')'")
    if tok != "(":
        if _RATIONAL.match(tok):
            return Const(Fraction(tok)), pos + 1
        if _SYMBOL.match(tok):
            return Sym(tok), pos + 1
        raise StructuralError(f"bad atom {tok!r}")
    head = toks[pos + 1]
    pos += 2
    if head in ("c", "f"):
        re_tok, im_tok, close = toks[pos : pos + 3]
        if close != ")":
            raise StructuralError("constant literal must have exactly two parts")
        if head == "c":
            value = nb.GaussRational(Fraction(re_tok), Fraction(im_tok))
        else:
            value = complex(float(re_tok), float(im_tok))
        return Const(value), pos + 3
    args = []
    while toks[pos] != ")":
        if head == "^" and len(args) == 1:
            args.append(Fraction(toks[pos]))
            pos += 1
            continue
        sub, pos = _parse(toks, pos)
        args.append(sub)
    pos += 1
    if head == "+":
        return add(*args), pos
    if head == "*":
        return mul(*args), pos
    if head == "^":
        if len(args) != 2:
            raise StructuralError("power takes a base and an exponent")
        return power(args[0], args[1]), pos
    if head in BUILTINS:
        if len(args) != 1:
            raise StructuralError(f"{head} takes one argument")
        return apply_fn(head, args[0]), pos
    raise StructuralError(f"unknown head {head!r}")
