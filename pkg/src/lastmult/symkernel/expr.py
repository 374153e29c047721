"""Immutable expression trees kept in canonical form.

Every public constructor (``add``, ``mul``, ``power``, ``apply_fn`` and the
operator overloads) returns a canonical tree:

* sums and products are flat and sorted by a total order on nodes,
* numeric constants are folded into a single leading coefficient,
* like terms and like factors are collected,
* exponentials in a product are merged into one ``exp`` node,
* products are distributed over sums and small positive integer powers of
  sums are expanded, so polynomial parts end up fully expanded.

Sums raised to negative or fractional powers are kept as opaque factors.
"""

from __future__ import annotations

from fractions import Fraction

from lastmult.errors import PoleError, StructuralError
from lastmult.symkernel import numbers as nb

BUILTINS = ("exp", "sin", "cos", "tan", "cot", "sec", "csc", "log", "arctan")

# Largest positive integer power of a sum that is multiplied out.
EXPAND_LIMIT = 8

_RANK = {"const": 0, "symbol": 1, "power": 2, "product": 3, "sum": 4, "apply": 5}


class Expr:
    __slots__ = ("_hash", "_key", "_free")

    kind = "expr"

    @property
    def children(self) -> tuple:
        return ()

    # structural identity -------------------------------------------------
    def _fields(self):
        raise NotImplementedError

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.kind, self._fields()))
            object.__setattr__(self, "_hash", h)
            return h

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return self.kind == other.kind and hash(self) == hash(other) and self._fields() == other._fields()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def key(self):
        """Sort key realizing the canonical total order."""
        try:
            return self._key
        except AttributeError:
            k = self._make_key()
            object.__setattr__(self, "_key", k)
            return k

    @property
    def free_symbols(self) -> frozenset:
        try:
            return self._free
        except AttributeError:
            fs = frozenset().union(*(c.free_symbols for c in self.children)) if self.children else frozenset()
            object.__setattr__(self, "_free", fs)
            return fs

    def __lt__(self, other):
        return self.key < other.key

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return add(self, mul(-1, other))

    def __rsub__(self, other):
        return add(other, mul(-1, self))

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return mul(self, power(other, -1))

    def __rtruediv__(self, other):
        return mul(other, power(self, -1))

    def __neg__(self):
        return mul(-1, self)

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        return power(self, exponent)

    def __repr__(self):
        from lastmult.symkernel.serialize import to_prefix

        return f"Expr<{to_prefix(self)}>"

    def __str__(self):
        from lastmult.symkernel.serialize import to_prefix

        return to_prefix(self)


class Const(Expr):
    __slots__ = ("value",)
    kind = "const"

    def __init__(self, value):
        object.__setattr__(self, "value", nb.to_number(value))

    def _fields(self):
        v = self.value
        return (v.re, v.im) if nb.is_exact(v) else ("f", v)

    def _make_key(self):
        return (0, nb.sort_key(self.value), ())

    @property
    def free_symbols(self):
        return frozenset()


class Sym(Expr):
    __slots__ = ("name",)
    kind = "symbol"

    def __init__(self, name: str):
        if not isinstance(name, str) or not name:
            raise StructuralError(f"bad symbol name {name!r}")
        object.__setattr__(self, "name", name)

    def _fields(self):
        return (self.name,)

    def _make_key(self):
        return (1, self.name, ())

    @property
    def free_symbols(self):
        return frozenset((self.name,))


class Add(Expr):
    __slots__ = ("terms",)
    kind = "sum"

    def __init__(self, terms):
        object.__setattr__(self, "terms", tuple(terms))

    @property
    def children(self):
        return self.terms

    def _fields(self):
        return self.terms

    def _make_key(self):
        return (4, "", tuple(t.key for t in self.terms))


class Mul(Expr):
    __slots__ = ("factors",)
    kind = "product"

    def __init__(self, factors):
        object.__setattr__(self, "factors", tuple(factors))

    @property
    def children(self):
        return self.factors

    def _fields(self):
        return self.factors

    def _make_key(self):
        return (3, "", tuple(f.key for f in self.factors))


class Pow(Expr):
    __slots__ = ("base", "exp")
    kind = "power"

    def __init__(self, base: Expr, exp):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exp", Fraction(exp))

    @property
    def children(self):
        return (self.base,)

    def _fields(self):
        return (self.base, self.exp)

    def _make_key(self):
        return (2, "", (self.base.key, ((float(self.exp), 0.0), "", ())))


class Apply(Expr):
    __slots__ = ("fn", "arg")
    kind = "apply"

    def __init__(self, fn: str, arg: Expr):
        if fn not in BUILTINS:
            raise StructuralError(f"function {fn!r} is not in the builtin basis {BUILTINS}")
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "arg", arg)

    @property
    def children(self):
        return (self.arg,)

    def _fields(self):
        return (self.fn, self.arg)

    def _make_key(self):
        return (5, self.fn, (self.arg.key,))


ZERO = Const(0)
ONE = Const(1)
I = Const(complex(0, 1))


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, str):
        return Sym(x)
    return Const(x)


def symbols(names: str):
    """``symbols("t x u")`` -> tuple of symbols."""
    return tuple(Sym(n) for n in names.split())


def const(value) -> Const:
    return Const(value)


def _split_coefficient(term: Expr):
    if isinstance(term, Const):
        return term.value, None
    if isinstance(term, Mul) and isinstance(term.factors[0], Const):
        rest = term.factors[1:]
        return term.factors[0].value, rest[0] if len(rest) == 1 else Mul(rest)
    return nb.GaussRational(1), term


def _with_coefficient(coef, rest: Expr) -> Expr:
    if nb.is_one(coef):
        return rest
    if isinstance(rest, Mul):
        return Mul((Const(coef),) + rest.factors)
    return Mul((Const(coef), rest))


def add(*args) -> Expr:
    acc: dict = {}
    const_part = nb.GaussRational(0)
    stack = [as_expr(a) for a in args]
    flat = []
    while stack:
        e = stack.pop()
        if isinstance(e, Add):
            stack.extend(e.terms)
        else:
            flat.append(e)
    for term in flat:
        coef, rest = _split_coefficient(term)
        if rest is None:
            const_part = nb.add(const_part, coef)
        elif rest in acc:
            acc[rest] = nb.add(acc[rest], coef)
        else:
            acc[rest] = coef
    terms = [_with_coefficient(c, r) for r, c in acc.items() if not nb.is_zero(c)]
    terms.sort(key=lambda e: e.key)
    if not nb.is_zero(const_part):
        terms.insert(0, Const(const_part))
    if not terms:
        return ZERO
    if len(terms) == 1:
        return terms[0]
    return Add(terms)


def _base_exponent(f: Expr):
    if isinstance(f, Pow):
        return f.base, f.exp
    return f, Fraction(1)


def mul(*args) -> Expr:
    coef = nb.GaussRational(1)
    exps: dict = {}
    exp_args = []
    stack = [as_expr(a) for a in args]
    while stack:
        f = stack.pop()
        if isinstance(f, Mul):
            stack.extend(f.factors)
            continue
        if isinstance(f, Const):
            coef = nb.mul(coef, f.value)
            continue
        base, e = _base_exponent(f)
        if isinstance(base, Apply) and base.fn == "exp" and e.denominator == 1:
            exp_args.append(base.arg if e == 1 else mul(e, base.arg))
            continue
        exps[base] = exps.get(base, Fraction(0)) + e
    if nb.is_zero(coef):
        return ZERO
    if exp_args:
        merged = apply_fn("exp", add(*exp_args))
        if isinstance(merged, Const):
            coef = nb.mul(coef, merged.value)
        else:
            exps[merged] = exps.get(merged, Fraction(0)) + 1
    plain = []
    sums = []
    for base, e in exps.items():
        if e == 0:
            continue
        if isinstance(base, Add) and e.denominator == 1 and 0 < e <= EXPAND_LIMIT:
            sums.extend([base] * int(e))
            continue
        f = power(base, e)
        if isinstance(f, Const):
            coef = nb.mul(coef, f.value)
        elif isinstance(f, Add):
            sums.append(f)
        elif isinstance(f, Mul):
            c, rest = _split_coefficient(f)
            coef = nb.mul(coef, c)
            plain.extend(rest.factors if isinstance(rest, Mul) else [rest])
        else:
            plain.append(f)
    if nb.is_zero(coef):
        return ZERO
    if sums:
        return _distribute(coef, plain, sums)
    plain.sort(key=lambda e: e.key)
    if not plain:
        return Const(coef)
    if len(plain) == 1 and nb.is_one(coef):
        return plain[0]
    if nb.is_one(coef):
        return Mul(plain)
    return Mul([Const(coef)] + plain)


def _distribute(coef, plain, sums) -> Expr:
    partial = [mul(Const(coef), *plain)] if plain else [Const(coef)]
    for s in sums:
        partial = [mul(p, t) for p in partial for t in s.terms]
    return add(*partial)


def power(base, exponent) -> Expr:
    base = as_expr(base)
    if isinstance(exponent, Expr):
        if not isinstance(exponent, Const) or not nb.is_exact(exponent.value) or not exponent.value.is_real:
            raise StructuralError("exponents must be rational constants")
        exponent = exponent.value.re
    if isinstance(exponent, float):
        fr = Fraction(exponent).limit_denominator(10**6)
        if float(fr) != exponent:
            raise StructuralError(f"exponent {exponent!r} is not a simple rational")
        exponent = fr
    n = Fraction(exponent)
    if n == 0:
        return ONE
    if n == 1:
        return base
    if isinstance(base, Const):
        try:
            return Const(nb.power(base.value, n))
        except ZeroDivisionError as exc:
            raise PoleError(f"constant pole: 0**{n}", location=str(n)) from exc
    if isinstance(base, Pow):
        if n.denominator == 1:
            return power(base.base, base.exp * n)
        return Pow(base, n)
    if isinstance(base, Mul) and n.denominator == 1:
        return mul(*(power(f, n) for f in base.factors))
    if isinstance(base, Apply) and base.fn == "exp" and n.denominator == 1:
        return apply_fn("exp", mul(n, base.arg))
    if isinstance(base, Add) and n.denominator == 1 and 1 < n <= EXPAND_LIMIT:
        return _distribute(nb.GaussRational(1), [], [base] * int(n))
    return Pow(base, n)


_EXACT_FOLDS = {
    ("exp", 0): 1,
    ("sin", 0): 0,
    ("cos", 0): 1,
    ("tan", 0): 0,
    ("arctan", 0): 0,
    ("log", 1): 0,
    ("sec", 0): 1,
}


def apply_fn(fn: str, arg) -> Expr:
    arg = as_expr(arg)
    if fn not in BUILTINS:
        raise StructuralError(f"function {fn!r} is not in the builtin basis {BUILTINS}")
    if isinstance(arg, Const):
        v = arg.value
        if nb.is_exact(v) and v.im == 0 and (fn, v.re) in _EXACT_FOLDS:
            return Const(_EXACT_FOLDS[(fn, v.re)])
        from lastmult.symkernel.evaluate import evaluate

        return Const(evaluate(Apply(fn, arg), {}))
    return Apply(fn, arg)


def exp(a):
    return apply_fn("exp", a)


def sin(a):
    return apply_fn("sin", a)


def cos(a):
    return apply_fn("cos", a)


def tan(a):
    return apply_fn("tan", a)


def cot(a):
    return apply_fn("cot", a)


def sec(a):
    return apply_fn("sec", a)


def csc(a):
    return apply_fn("csc", a)


def log(a):
    return apply_fn("log", a)


def arctan(a):
    return apply_fn("arctan", a)


def sqrt(a):
    return power(a, Fraction(1, 2))


def canon(e: Expr) -> Expr:
    """Rebuild ``e`` bottom-up through the canonical constructors."""
    if isinstance(e, (Const, Sym)):
        return e
    if isinstance(e, Add):
        return add(*(canon(t) for t in e.terms))
    if isinstance(e, Mul):
        return mul(*(canon(f) for f in e.factors))
    if isinstance(e, Pow):
        return power(canon(e.base), e.exp)
    if isinstance(e, Apply):
        return apply_fn(e.fn, canon(e.arg))
    raise StructuralError(f"unknown node {e!r}")


def is_zero(e: Expr) -> bool:
    """Structural zero test (no sampling)."""
    return isinstance(e, Const) and nb.is_zero(e.value)


def terms_of(e: Expr) -> tuple:
    return e.terms if isinstance(e, Add) else (e,)


def node_count(e: Expr) -> int:
    return 1 + sum(node_count(c) for c in e.children)
