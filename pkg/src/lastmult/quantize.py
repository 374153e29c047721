"""Operator-ordering quantization of Hamiltonians quadratic in the momentum.

Operators are kept in the form ``2i u_t = a u_xx + b u_x + c u`` so every
scheme and every catalog equation is compared on the same footing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from lastmult.errors import DomainError, StructuralError, UnsupportedError
from lastmult.symkernel import (
    Expr,
    I,
    SampleDomain,
    Sym,
    add,
    as_expr,
    differentiate,
    equiv,
    evaluate_array,
    is_identically_zero,
    mul,
    power,
    sample_points,
    to_prefix,
)

X = Sym("x")
T = Sym("t")

SCHEMES = ("two-term-symmetric", "weyl", "split-symmetric")
ORDERING_FORMULA = {
    "two-term-symmetric": "(p^2 B + B p^2)/2",
    "weyl": "(p^2 B + 2 p B p + B p^2)/4",
    "split-symmetric": "sqrt(B) p^2 sqrt(B)",
}
LINEAR_FORMULA = "(p f1 + f1 p)/2"


class DiffOp:
    """``sum_j coeffs[j] * d^j/dx^j`` with expression coefficients."""

    def __init__(self, coeffs):
        coeffs = [as_expr(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == as_expr(0):
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def multiply(cls, f) -> DiffOp:
        return cls([f])

    @classmethod
    def momentum(cls) -> DiffOp:
        """``p = -i d/dx``."""
        return cls([0, mul(-1, I)])

    def coefficient(self, j: int) -> Expr:
        return self.coeffs[j] if j < len(self.coeffs) else as_expr(0)

    def __add__(self, other: DiffOp) -> DiffOp:
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coefficient(j) + other.coefficient(j) for j in range(n)])

    def scale(self, c) -> DiffOp:
        return DiffOp([mul(c, a) for a in self.coeffs])

    def __matmul__(self, other: DiffOp) -> DiffOp:
        """Composition ``self o other`` via the Leibniz rule."""
        out = [as_expr(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for j, a in enumerate(self.coeffs):
            for m, b in enumerate(other.coeffs):
                for r in range(j + 1):
                    term = mul(comb(j, r), a, differentiate(b, "x", r) if r else b)
                    out[j - r + m] = out[j - r + m] + term
        return DiffOp(out)

    def apply(self, u: Expr) -> Expr:
        return add(*(mul(c, differentiate(u, "x", j) if j else u) for j, c in enumerate(self.coeffs)))


@dataclass(frozen=True)
class ClassicalHamiltonianForm:
    """``H = (A + p^2 B)/2 - p * linear``."""

    A: Expr
    B: Expr
    linear: Expr = field(default_factory=lambda: as_expr(0))
    tag: str = "custom"

    def __post_init__(self):
        for name in ("A", "B", "linear"):
            object.__setattr__(self, name, as_expr(getattr(self, name)))
        if self.B == as_expr(0):
            raise StructuralError("the p^2 coefficient may not vanish")


@dataclass(frozen=True)
class EvolutionOperator:
    """``2i u_t = a u_xx + b u_x + c u``."""

    a: Expr
    b: Expr
    c: Expr
    scheme: str
    source: str
    ordering: str = ""
    domain: SampleDomain = field(default_factory=lambda: SampleDomain(box=(0.3, 2.0)))

    def to_json(self) -> dict:
        return {
            "tag": self.source,
            "scheme": self.scheme,
            "ordering": self.ordering,
            "a": to_prefix(self.a),
            "b": to_prefix(self.b),
            "c": to_prefix(self.c),
        }


def sho_form(k: float = 1.0) -> ClassicalHamiltonianForm:
    return ClassicalHamiltonianForm(mul(k * k, X**2), 1, 0, "sho")


def goldstein_form() -> ClassicalHamiltonianForm:
    """``(1/q^2 + p^2 q^4)/2``."""
    return ClassicalHamiltonianForm(power(X, -2), X**4, 0, "goldstein")


def _positive(expr: Expr, domain: SampleDomain) -> bool:
    pts = sample_points(expr.free_symbols or {"x"}, 64, 0, domain)
    vals = evaluate_array(expr, pts) if expr.free_symbols else np.full(64, complex(evaluate_array(expr, {})))
    return bool(np.all(np.abs(vals.imag) < 1e-12) and np.all(vals.real > 0))


def _kinetic(B: Expr, scheme: str, domain: SampleDomain) -> DiffOp:
    p = DiffOp.momentum()
    b = DiffOp.multiply(B)
    p2 = p @ p
    if scheme == "two-term-symmetric":
        return ((p2 @ b) + (b @ p2)).scale(Fraction(1, 2))
    if scheme == "weyl":
        return ((p2 @ b) + (p @ b @ p).scale(2) + (b @ p2)).scale(Fraction(1, 4))
    if scheme == "split-symmetric":
        if not _positive(B, domain):
            raise DomainError("split-symmetric ordering needs B > 0 on the domain")
        r = DiffOp.multiply(power(B, Fraction(1, 2)))
        return r @ p2 @ r
    raise UnsupportedError(f"unknown ordering scheme {scheme!r}")


def quantize(h: ClassicalHamiltonianForm, scheme: str, domain: SampleDomain | None = None) -> EvolutionOperator:
    """Promote ``h`` to ``2H`` under ``p -> -i d/dx`` with the chosen ordering."""
    domain = domain or SampleDomain(box=(0.3, 2.0))
    p = DiffOp.momentum()
    f1 = DiffOp.multiply(h.linear)
    two_h = _kinetic(h.B, scheme, domain) + DiffOp.multiply(h.A) + ((p @ f1) + (f1 @ p)).scale(-1)
    if len(two_h.coeffs) > 3:
        raise StructuralError("ordering produced more than two derivatives")
    return EvolutionOperator(
        two_h.coefficient(2),
        two_h.coefficient(1),
        two_h.coefficient(0),
        scheme,
        h.tag,
        f"{ORDERING_FORMULA[scheme]}; {LINEAR_FORMULA}",
        domain,
    )


def general_gauge_operator(f1, f2, domain: SampleDomain | None = None) -> EvolutionOperator:
    """``2i u_t = -u_xx + 2i f1 u_x + (f1^2 - 2 f2 + i f1_x) u`` exactly as written."""
    f1, f2 = as_expr(f1), as_expr(f2)
    return EvolutionOperator(
        as_expr(-1),
        mul(2, I, f1),
        f1**2 - 2 * f2 + mul(I, differentiate(f1, "x")),
        "weyl",
        "gauge",
        f"{ORDERING_FORMULA['weyl']}; {LINEAR_FORMULA}",
        domain or SampleDomain(box=(-2.0, 2.0), boxes={"t": (0.3, 2.0)}),
    )


def gauge_form(f1, f2) -> ClassicalHamiltonianForm:
    """``p^2/2 - p f1 + f1^2/2 - f2`` in the restricted form."""
    f1, f2 = as_expr(f1), as_expr(f2)
    return ClassicalHamiltonianForm(f1**2 - 2 * f2, 1, f1, "gauge")


def apply(op: EvolutionOperator, u) -> Expr:
    """``2i u_t - a u_xx - b u_x - c u``; zero exactly on solutions."""
    u = as_expr(u)
    return add(
        mul(2, I, differentiate(u, "t")),
        mul(-1, op.a, differentiate(u, "x", 2)),
        mul(-1, op.b, differentiate(u, "x")),
        mul(-1, op.c, u),
    )


def same_operator(p: EvolutionOperator, q: EvolutionOperator, tol: float = 1e-12, domain=None) -> bool:
    domain = domain or p.domain
    return all(equiv(x, y, tol=tol, domain=domain) for x, y in ((p.a, q.a), (p.b, q.b), (p.c, q.c)))


def with_coefficients(a, b, c, tag: str, scheme: str = "printed", domain=None) -> EvolutionOperator:
    return EvolutionOperator(as_expr(a), as_expr(b), as_expr(c), scheme, tag, "as printed", domain or SampleDomain(box=(0.3, 2.0)))


GOLDSTEIN_DOMAIN = SampleDomain(box=(0.3, 2.0), boxes={"x": (0.2, 5.0)})
SHO_DOMAIN = SampleDomain(box=(0.3, 2.0), boxes={"x": (-3.0, 3.0)})


def printed_operators() -> dict:
    """The four equations as published, in the 2i-normalized form."""
    return {
        "sho": with_coefficients(-1, 0, X**2, "sho", domain=SHO_DOMAIN),
        "goldstein-normal": with_coefficients(-(X**4), -4 * X**3, power(X, -2) - 6 * X**2, "goldstein-normal", domain=GOLDSTEIN_DOMAIN),
        "goldstein-weyl": with_coefficients(-(X**4), -4 * X**3, power(X, -2) - 3 * X**2, "goldstein-weyl", domain=GOLDSTEIN_DOMAIN),
        "goldstein-split": with_coefficients(-(X**4), -4 * X**3, power(X, -2) - 2 * X**2, "goldstein-split", domain=GOLDSTEIN_DOMAIN),
    }


SCHEME_FOR_PRINTED = {
    "goldstein-normal": "two-term-symmetric",
    "goldstein-weyl": "weyl",
    "goldstein-split": "split-symmetric",
}


def operator_catalog() -> list:
    """Every scheme applied to both catalog Hamiltonians, as JSON-ready dicts."""
    out = []
    for form, dom in ((sho_form(), SHO_DOMAIN), (goldstein_form(), GOLDSTEIN_DOMAIN)):
        for scheme in SCHEMES:
            out.append(quantize(form, scheme, dom).to_json())
    return out


def x_squared_coefficient(op: EvolutionOperator, samples: int = 16) -> float:
    """The ``x^2`` coefficient of ``c - 1/x^2`` for Goldstein-type operators."""
    resid = op.c - power(X, -2)
    pts = sample_points({"x"}, samples, 0, GOLDSTEIN_DOMAIN)
    vals = evaluate_array(resid, pts) / pts["x"] ** 2
    if not is_identically_zero(resid - mul(complex(np.median(vals.real)), X**2), domain=GOLDSTEIN_DOMAIN, tol=1e-9):
        raise StructuralError("c is not of the form 1/x^2 + const x^2")
    return float(np.median(vals.real))
