"""Scalar constants: exact Gaussian rationals with a complex-float fallback."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Number


class GaussRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    def __repr__(self):
        if self.im == 0:
            return f"GaussRational({self.re})"
        return f"GaussRational({self.re}, {self.im})"

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def is_real(self):
        return self.im == 0

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_one(self):
        return self.re == 1 and self.im == 0


Scalar = "GaussRational | complex"

_LIMIT_DENOMINATOR = 10**9


def to_number(value) -> GaussRational | complex:
    """Normalize a Python scalar to the kernel's constant representation.

    Integers and Fractions become exact. Floats become exact when they are
    the nearest double to a rational with a modest denominator (so ``0.3``
    turns into 3/10); everything else stays a complex float.
    """
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, bool):
        return GaussRational(int(value))
    if isinstance(value, (int, Fraction)):
        return GaussRational(value)
    if isinstance(value, float):
        r = _exact_float(value)
        return GaussRational(r) if r is not None else complex(value)
    if isinstance(value, complex):
        re, im = _exact_float(value.real), _exact_float(value.imag)
        if re is not None and im is not None:
            return GaussRational(re, im)
        return value
    if isinstance(value, Number):
        return to_number(complex(value))
    raise TypeError(f"not a scalar: {value!r}")


def _exact_float(x: float):
    if not math.isfinite(x):
        return None
    r = Fraction(x).limit_denominator(_LIMIT_DENOMINATOR)
    return r if float(r) == x else None


def is_exact(z) -> bool:
    return isinstance(z, GaussRational)


def as_complex(z) -> complex:
    return complex(z)


def add(a, b):
    if is_exact(a) and is_exact(b):
        return GaussRational(a.re + b.re, a.im + b.im)
    return complex(a) + complex(b)


def mul(a, b):
    if is_exact(a) and is_exact(b):
        return GaussRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)
    return complex(a) * complex(b)


def neg(a):
    return mul(GaussRational(-1), a)


def is_zero(a) -> bool:
    return a.is_zero() if is_exact(a) else a == 0


def is_one(a) -> bool:
    return a.is_one() if is_exact(a) else a == 1


def inverse(a):
    if is_zero(a):
        raise ZeroDivisionError("inverse of zero constant")
    if is_exact(a):
        d = a.re * a.re + a.im * a.im
        return GaussRational(a.re / d, -a.im / d)
    return 1 / complex(a)


def power(a, n: Fraction):
    """Principal-branch power ``a**n`` for a rational exponent ``n``."""
    n = Fraction(n)
    if n.denominator == 1:
        e = n.numerator
        if is_exact(a):
            if e < 0:
                a, e = inverse(a), -e
            result = GaussRational(1)
            base = a
            while e:
                if e & 1:
                    result = mul(result, base)
                base = mul(base, base)
                e >>= 1
            return result
        if is_zero(a) and e < 0:
            raise ZeroDivisionError("negative power of zero")
        return complex(a) ** e
    if is_exact(a) and a.is_real and a.re > 0:
        root = _exact_root(a.re, n.denominator)
        if root is not None:
            return power(GaussRational(root), Fraction(n.numerator))
    if is_zero(a):
        if n < 0:
            raise ZeroDivisionError("negative power of zero")
        return GaussRational(0)
    return cmath.exp(float(n) * cmath.log(complex(a)))


def _exact_root(r: Fraction, q: int):
    num = _int_root(r.numerator, q)
    den = _int_root(r.denominator, q)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, q: int):
    if n < 0:
        return None
    guess = round(n ** (1.0 / q))
    for c in (guess - 1, guess, guess + 1):
        if c >= 0 and c**q == n:
            return c
    return None


def sort_key(a):
    z = complex(a)
    return (z.real, z.imag)


def format_number(a) -> str:
    """Text form used by the prefix serializer."""
    if is_exact(a):
        if a.im == 0:
            return _fmt_fraction(a.re)
        return f"(c {_fmt_fraction(a.re)} {_fmt_fraction(a.im)})"
    z = complex(a)
    return f"(f {z.real!r} {z.imag!r})"


def _fmt_fraction(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
