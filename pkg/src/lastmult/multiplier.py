"""Jacobi last multipliers of the oscillator from pairs of point symmetries."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from lastmult.errors import InconclusiveError, PoleError, UnsupportedError
from lastmult.mechsys import PHASE, U1, U2, FirstOrderSystem, GeneratorField, T, Trajectory
from lastmult.symkernel import (
    Expr,
    SampleDomain,
    add,
    as_expr,
    cos,
    differentiate,
    equiv,
    equiv_up_to_constant,
    evaluate_array,
    is_identically_zero,
    mul,
    power,
    sample_points,
    sin,
    to_prefix,
)

BASIC_TAGS = ("JLM12", "JLM13", "JLM23")
CATALOG_TAGS = BASIC_TAGS + ("JLM34",)

# Zero-determinant test: 32 samples, absolute tolerance 1e-10.
ZERO_SAMPLES = 32
ZERO_TOL = 1e-10


@dataclass(frozen=True)
class Multiplier:
    value: Expr
    provenance: str
    k: float


@dataclass(frozen=True)
class ZeroDeterminant:
    """Returned instead of a multiplier when the pair is functionally dependent."""

    provenance: str
    determinant: Expr


def _det3(rows) -> Expr:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return add(mul(a, e, i), mul(b, f, g), mul(c, d, h), mul(-1, c, e, g), mul(-1, b, d, i), mul(-1, a, f, h))


def determinant(sys: FirstOrderSystem, a: GeneratorField, b: GeneratorField) -> Expr:
    """Determinant of the rows (vector field, a, b), in that order."""
    for g in (a, b):
        if g.coords != PHASE:
            raise ValueError("multiplier determinants need phase-space generators")
    return _det3([sys.vector_field(), a.coeffs, b.coeffs])


def multiplier_pde_residual(sys: FirstOrderSystem, m) -> Expr:
    """``dM/dt + sum_i d(M a_i)/du_i`` for the system's vector field ``a``."""
    m = m.value if isinstance(m, Multiplier) else as_expr(m)
    parts = [differentiate(m, sys.time)]
    for s in sys.states:
        parts.append(differentiate(mul(m, sys.rhs[s]), s))
    return add(*parts)


def multiplier_from_pair(sys, a, b, domain: SampleDomain | None = None, seed: int = 0):
    """``1/det`` for a nonvanishing determinant, else a :class:`ZeroDeterminant`."""
    det = determinant(sys, a, b)
    prov = f"pair({a.tag},{b.tag})"
    if is_identically_zero(det, samples=ZERO_SAMPLES, tol=ZERO_TOL, seed=seed, domain=domain):
        return ZeroDeterminant(prov, det)
    return Multiplier(power(det, -1), prov, sys.k)


def _d13(k):
    return k * U1 * sin(k * T) + U2 * cos(k * T)


def _d23(k):
    return -k * U1 * cos(k * T) + U2 * sin(k * T)


def catalog_multiplier(tag: str, k: float) -> Multiplier:
    """The three basic multipliers and the sum-of-inverse-squares combination."""
    if tag == "JLM12":
        value = as_expr(k)
    elif tag == "JLM13":
        value = power(_d13(k), -1)
    elif tag == "JLM23":
        value = power(_d23(k), -1)
    elif tag == "JLM34":
        value = power(U2**2 + k**2 * U1**2, -1)
    else:
        raise UnsupportedError(f"unknown catalog multiplier {tag!r}")
    return Multiplier(value, tag, k)


def jlm34_from_combination(k: float) -> Expr:
    """``(JLM13^-2 + JLM23^-2)^-1`` built from the two basic multipliers."""
    m13 = catalog_multiplier("JLM13", k).value
    m23 = catalog_multiplier("JLM23", k).value
    return power(add(power(m13, -2), power(m23, -2)), -1)


@dataclass
class PairEntry:
    i: int
    j: int
    determinant: Expr
    status: str
    matched_basic: str | None = None
    constant: complex | None = None
    satisfies_multiplier_pde: bool | None = None

    def to_json(self) -> dict:
        c = self.constant
        return {
            "i": self.i,
            "j": self.j,
            "determinant": to_prefix(self.determinant),
            "status": self.status,
            "matched_basic": self.matched_basic,
            "constant": None if c is None else [round(c.real, 12), round(c.imag, 12)],
            "satisfies_multiplier_pde": self.satisfies_multiplier_pde,
        }


@dataclass
class PairClassification:
    entries: list = field(default_factory=list)

    @property
    def zero_count(self) -> int:
        return sum(e.status == "zero" for e in self.entries)

    @property
    def nonzero_count(self) -> int:
        return sum(e.status == "nonzero" for e in self.entries)

    @property
    def distinct_basic(self) -> int:
        return len({e.matched_basic for e in self.entries if e.matched_basic in BASIC_TAGS})

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def _match(m: Expr, k: float, seed: int, domain):
    """Identify ``m`` up to a constant among basic forms, JLM34, or products of JLM13/JLM23."""
    for tag in CATALOG_TAGS:
        c = equiv_up_to_constant(m, catalog_multiplier(tag, k).value, seed=seed, domain=domain)
        if c is not None:
            return (tag if tag in BASIC_TAGS else f"combination:{tag}"), c
    m13, m23 = catalog_multiplier("JLM13", k).value, catalog_multiplier("JLM23", k).value
    for total in range(2, 5):
        for a in range(total + 1):
            c = equiv_up_to_constant(m, mul(power(m13, a), power(m23, total - a)), seed=seed, domain=domain)
            if c is not None:
                return f"combination:JLM13^{a}*JLM23^{total - a}", c
    # inverse of a homogeneous form in D13, D23 (e.g. D13^2 - D23^2)
    inv = power(m, -1)
    for degree in (2, 3):
        basis = [mul(power(_d13(k), degree - a), power(_d23(k), a)) for a in range(degree + 1)]
        names = set().union(*(b.free_symbols for b in basis)) | inv.free_symbols
        pts = sample_points(names, 24, seed, domain)
        cols = np.stack([evaluate_array(b, pts, strict=False) for b in basis], axis=1)
        rhs = evaluate_array(inv, pts, strict=False)
        ok = np.all(np.isfinite(cols), axis=1) & np.isfinite(rhs)
        if ok.sum() < 2 * len(basis):
            continue
        coef, *_ = np.linalg.lstsq(cols[ok], rhs[ok], rcond=None)
        resid = np.abs(cols[ok] @ coef - rhs[ok])
        if np.all(resid <= 1e-9 * (1 + np.abs(rhs[ok]))):
            names_ = [f"D13^{degree - a}*D23^{a}" for a in range(degree + 1)]
            terms = " ".join(f"{c.real:+.6g}*{n}" for c, n in zip(coef, names_) if abs(c) > 1e-12)
            return f"combination:1/({terms})", None
    return None, None


def enumerate_pairs(sys: FirstOrderSystem, catalog: list, seed: int = 0, domain=None) -> PairClassification:
    """Classify all C(n,2) symmetry pairs of the catalog."""
    if len(catalog) != 8:
        raise ValueError("expected the eight-generator catalog")
    out = PairClassification()
    for (i, a), (j, b) in itertools.combinations(enumerate(catalog, start=1), 2):
        res = multiplier_from_pair(sys, a, b, domain=domain, seed=seed)
        det = res.determinant if isinstance(res, ZeroDeterminant) else determinant(sys, a, b)
        if isinstance(res, ZeroDeterminant):
            out.entries.append(PairEntry(i, j, det, "zero"))
            continue
        tag, c = _match(res.value, sys.k, seed, domain)
        pde_ok = is_identically_zero(multiplier_pde_residual(sys, res), tol=1e-9, seed=seed, domain=domain)
        out.entries.append(PairEntry(i, j, det, "nonzero", tag, c, pde_ok))
    return out


@dataclass(frozen=True)
class ConstancyReport:
    mean: complex
    spread: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.spread < self.tolerance

    def to_json(self) -> dict:
        return {"mean": [self.mean.real, self.mean.imag], "spread": self.spread, "tolerance": self.tolerance, "passed": self.passed}


def ratio_first_integral_check(m1: Multiplier, m2: Multiplier, traj: Trajectory, tol: float = 1e-6) -> ConstancyReport:
    """Evaluate ``m1/m2`` along the trajectory and report its relative spread."""
    ratio = mul(m1.value, power(m2.value, -1))
    try:
        vals = evaluate_array(ratio, traj.bindings())
    except PoleError as exc:
        raise PoleError(f"multiplier ratio singular at node {exc.index}", location=exc.location, index=exc.index) from exc
    mean = complex(np.mean(vals))
    if mean == 0:
        raise InconclusiveError("ratio vanishes identically along the trajectory")
    spread = float(np.max(np.abs(vals - mean)) / abs(mean))
    return ConstancyReport(mean, spread, tol)


def multiplier_matches_catalog(m: Multiplier, tag: str, **kw) -> complex | None:
    return equiv_up_to_constant(m.value, catalog_multiplier(tag, m.k).value, **kw)


def jlm34_identity_holds(k: float, tol: float = 1e-9, seed: int = 0) -> bool:
    return equiv(jlm34_from_combination(k), catalog_multiplier("JLM34", k).value, tol=tol, seed=seed)
