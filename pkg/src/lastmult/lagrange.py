"""Lagrangians generated by the catalog multipliers, Euler-Lagrange and Noether checks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from lastmult.errors import ConstraintError, UnsupportedError
from lastmult.mechsys import PHASE, U1, U2, GeneratorField, T, first_prolongation, symmetry_catalog
from lastmult.multiplier import CATALOG_TAGS, Multiplier, catalog_multiplier
from lastmult.symkernel import (
    Expr,
    SampleDomain,
    add,
    arctan,
    as_expr,
    cos,
    differentiate,
    equiv_up_to_constant,
    evaluate_array,
    is_identically_zero,
    log,
    mul,
    power,
    sample_points,
    sec,
    csc,
    sin,
    to_prefix,
    total_derivative,
)

LAGRANGIAN_TAGS = ("L12", "L13", "L23", "L34")
_FROM_MULT = dict(zip(CATALOG_TAGS, LAGRANGIAN_TAGS))


@dataclass(frozen=True)
class VariationalPair:
    kind: str
    value: Expr
    f1: Expr
    f2: Expr
    constraint: Expr
    tag: str
    k: float
    normalization: complex = 1.0
    meta: dict = field(default_factory=dict)

    def domain(self) -> SampleDomain:
        return safe_domain(self.tag, self.k)


def _d13(k):
    return k * U1 * sin(k * T) + U2 * cos(k * T)


def _d23(k):
    return -k * U1 * cos(k * T) + U2 * sin(k * T)


def _kinetic(tag: str, k: float) -> Expr:
    """Closed-form double antiderivative in ``u2`` of the normalized multiplier."""
    if tag == "L12":
        return U2**2 / 2
    if tag == "L13":
        d = _d13(k)
        return mul(power(sec(k * T), 2), log(d) * d - d)
    if tag == "L23":
        d = _d23(k)
        return mul(power(csc(k * T), 2), log(d) * d - d)
    if tag == "L34":
        r = U2 / (k * U1)
        return r * arctan(r) - log(r**2 + 1) / 2
    raise UnsupportedError(f"no closed form for {tag!r}")


def gauge_constraint(tag: str, k: float, f1, f2, scale=1) -> Expr:
    """Residual of the condition the integration functions must satisfy."""
    f1, f2 = as_expr(f1), as_expr(f2)
    curl = differentiate(f1, "t") - differentiate(f2, "u1")
    if tag == "L12":
        return curl - mul(scale, k * k, U1)
    if tag in ("L13", "L23"):
        return curl
    if tag == "L34":
        return U1 * curl - scale
    raise UnsupportedError(f"unknown Lagrangian tag {tag!r}")


def default_gauge(tag: str, k: float) -> tuple:
    if tag == "L12":
        return as_expr(0), mul(-k * k / 2, U1**2)
    if tag in ("L13", "L23"):
        return as_expr(0), as_expr(0)
    if tag == "L34":
        return as_expr(0), -log(U1)
    raise UnsupportedError(f"unknown Lagrangian tag {tag!r}")


def safe_domain(tag: str, k: float) -> SampleDomain:
    """Sampling region clear of the logarithm and secant singularities of each form."""
    if tag == "L12":
        return SampleDomain(box=(0.3, 2.0))
    if tag == "L13":
        return SampleDomain(
            box=(0.3, 2.0),
            boxes={"t": (0.1 / k, 1.4 / k)},
            where=lambda p: k * p["u1"] * np.sin(k * p["t"]) + p["u2"] * np.cos(k * p["t"]) > 0.05,
        )
    if tag == "L23":
        return SampleDomain(
            box=(0.3, 2.0),
            boxes={"t": (0.2 / k, 3.0 / k)},
            where=lambda p: -k * p["u1"] * np.cos(k * p["t"]) + p["u2"] * np.sin(k * p["t"]) > 0.05,
        )
    if tag == "L34":
        return SampleDomain(box=(0.3, 2.0), boxes={"u1": (0.5, 2.0)})
    raise UnsupportedError(f"unknown Lagrangian tag {tag!r}")


def _build(tag, k, f1, f2, scale=1, check=True) -> VariationalPair:
    f1 = as_expr(0 if f1 is None else f1)
    f2 = as_expr(0 if f2 is None else f2)
    constraint = gauge_constraint(tag, k, f1, f2, scale)
    if check and not is_identically_zero(constraint, tol=1e-9, domain=safe_domain(tag, k)):
        raise ConstraintError(f"gauge functions violate the {tag} constraint", residual=constraint)
    value = add(mul(scale, _kinetic(tag, k)), mul(f1, U2), f2)
    return VariationalPair("Lagrangian", value, f1, f2, constraint, tag, k, scale)


def catalog_lagrangian(tag: str, k: float, f1=None, f2=None) -> VariationalPair:
    """One of the four closed-form Lagrangians; gauge defaults when omitted."""
    if tag not in LAGRANGIAN_TAGS:
        raise UnsupportedError(f"unknown Lagrangian tag {tag!r}")
    if f1 is None and f2 is None:
        f1, f2 = default_gauge(tag, k)
    return _build(tag, k, f1, f2)


def identify_multiplier(m: Multiplier) -> tuple:
    """``(catalog tag, c)`` with ``m == c * catalog form``, or raise."""
    for tag in CATALOG_TAGS:
        ref = catalog_multiplier(tag, m.k).value
        if tag == "JLM12":
            ref = as_expr(1)
        try:
            c = equiv_up_to_constant(m.value, ref, domain=safe_domain(_FROM_MULT[tag], m.k))
        except Exception:
            c = None
        if c is not None and abs(c) > 0:
            return tag, c
    raise UnsupportedError("only the catalog multipliers have built-in double antiderivatives")


def lagrangian_from_multiplier(m: Multiplier, f1=0, f2=0, normalize: bool = True) -> VariationalPair:
    """``L = c * (double u2-antiderivative) + f1 u2 + f2`` for a catalog multiplier.

    With ``normalize`` the constant multiple ``c`` of the catalog form is
    divided out (and recorded), so ``k`` maps to ``u2^2/2``.
    """
    tag, c = identify_multiplier(m)
    scale = 1 if normalize else (c.real if abs(c.imag) < 1e-14 else c)
    pair = _build(_FROM_MULT[tag], m.k, f1, f2, scale=scale)
    return VariationalPair(pair.kind, pair.value, pair.f1, pair.f2, pair.constraint, pair.tag, m.k, c, {"multiplier": tag})


def hessian(L: VariationalPair) -> Expr:
    return differentiate(L.value, "u2", 2)


def _flow(k):
    return {"u1": U2, "u2": mul(-k * k, U1)}


def euler_lagrange_expr(L: VariationalPair) -> Expr:
    """``d/dt(dL/du2) - dL/du1`` with the oscillator flow substituted."""
    return total_derivative(differentiate(L.value, "u2"), "t", _flow(L.k)) - differentiate(L.value, "u1")


def _as_bindings(points) -> dict:
    if isinstance(points, dict):
        return {n: np.asarray(points[n], dtype=float) for n in PHASE}
    arr = np.asarray(points, dtype=float).reshape(-1, 3)
    return {n: arr[:, i] for i, n in enumerate(PHASE)}


def euler_lagrange_residual(L: VariationalPair, points) -> float:
    """Max ``|residual|`` over ``points`` (rows of ``(t, u1, u2)`` or a binding dict)."""
    vals = evaluate_array(euler_lagrange_expr(L), _as_bindings(points))
    return float(np.max(np.abs(vals)))


def safe_points(tag: str, k: float, n: int = 100, seed: int = 0) -> dict:
    return sample_points(PHASE, n, seed, safe_domain(tag, k))


def gauge_shift(L: VariationalPair, g) -> VariationalPair:
    """Add the total derivative of ``g(t, u1)``; leaves the equations of motion alone."""
    g = as_expr(g)
    dg = total_derivative(g, "t", {"u1": U2})
    return VariationalPair(L.kind, L.value + dg, L.f1, L.f2, L.constraint, L.tag, L.k, L.normalization, dict(L.meta))


# --- Noether point symmetries ---


def noether_defect(L: VariationalPair, g: GeneratorField) -> Expr:
    """``X1(L) + L * D(xi)`` with the first prolongation computed from ``(xi, eta)``."""
    if g.coords != PHASE:
        raise ValueError("Noether check needs a phase-space generator")
    xi, eta, _ = g.coeffs
    eta1 = first_prolongation(xi, eta)
    lv = L.value
    x1l = add(mul(xi, differentiate(lv, "t")), mul(eta, differentiate(lv, "u1")), mul(eta1, differentiate(lv, "u2")))
    return x1l + mul(lv, total_derivative(xi, "t", {"u1": U2}))


def euler_operator_conditions(d: Expr) -> tuple:
    """Both parts must vanish for ``d(t,u1,u2)`` to be ``dF/dt`` of some ``F(t,u1)``."""
    d_u2 = differentiate(d, "u2")
    return differentiate(d_u2, "u2"), differentiate(d, "u1") - differentiate(d_u2, "t") - U2 * differentiate(d_u2, "u1")


@dataclass
class NoetherEntry:
    generator: str
    is_noether: bool
    defect: Expr
    gauge_gradient: tuple | None = None

    def to_json(self) -> dict:
        out = {"generator": self.generator, "is_noether": self.is_noether}
        if self.is_noether:
            ft, fu = self.gauge_gradient
            out["gauge_term"] = {"dF_dt": to_prefix(ft), "dF_du1": to_prefix(fu)}
        else:
            out["defect"] = to_prefix(self.defect)
        return out


@dataclass
class NoetherReport:
    lagrangian: str
    candidates: list = field(default_factory=list)
    independent: int = 0

    @property
    def count(self) -> int:
        """Number of linearly independent Noether symmetries among the candidates."""
        return self.independent

    def to_json(self) -> dict:
        return {
            "lagrangian": self.lagrangian,
            "independent_noether": self.independent,
            "candidates": [c.to_json() for c in self.candidates],
        }


def span_rank(generators, samples: int = 24, seed: int = 0) -> int:
    """Rank of generators as vectors of functions, from sampled coefficients."""
    if not generators:
        return 0
    pts = sample_points(PHASE, samples, seed)
    cols = [np.concatenate([np.broadcast_to(evaluate_array(c, pts), (samples,)) for c in g.coeffs]) for g in generators]
    s = np.linalg.svd(np.stack(cols, axis=1), compute_uv=False)
    return int(np.sum(s > 1e-9 * max(1.0, s[0])))


def noether_check(L: VariationalPair, g: GeneratorField, tol: float = 1e-8, seed: int = 0) -> NoetherEntry:
    d = noether_defect(L, g)
    dom = L.domain()
    ok = all(is_identically_zero(c, tol=tol, seed=seed, domain=dom) for c in euler_operator_conditions(d))
    grad = None
    if ok:
        d_u2 = differentiate(d, "u2")
        grad = (d - U2 * d_u2, d_u2)
    return NoetherEntry(g.tag, ok, d, grad)


def listed_combinations(k: float) -> list:
    """The catalog's first six generators and the four combinations named alongside the counts."""
    g = symmetry_catalog(k, "prolonged")
    combos = [
        (g[3] + g[4]).scale(1, "G4+G5"),
        (g[3].scale(-1) + g[4]).scale(1, "-G4+G5"),
        (g[2].scale(-k) + g[5]).scale(1, "-kG3+G6"),
        (g[2].scale(k) + g[5]).scale(1, "kG3+G6"),
    ]
    return g[:6] + combos


def noether_report(L: VariationalPair, candidates=None, seed: int = 0) -> NoetherReport:
    candidates = listed_combinations(L.k) if candidates is None else candidates
    entries = [noether_check(L, g, seed=seed) for g in candidates]
    rank = span_rank([g for g, e in zip(candidates, entries) if e.is_noether], seed=seed)
    return NoetherReport(L.tag, entries, rank)


def noether_dimension(L: VariationalPair, generators=None, samples: int = 40, seed: int = 0) -> int:
    """Dimension of the Noether subspace inside the span of ``generators``.

    The Euler-operator conditions are linear in the generator, so the answer
    is the nullity of their sampled values stacked column by column.
    """
    generators = symmetry_catalog(L.k, "prolonged") if generators is None else generators
    pts = sample_points(PHASE, samples, seed, L.domain())
    cols = []
    for g in generators:
        c1, c2 = euler_operator_conditions(noether_defect(L, g))
        cols.append(np.concatenate([evaluate_array(c1, pts, strict=False), evaluate_array(c2, pts, strict=False)]))
    a = np.stack(cols, axis=1)
    a = a[np.all(np.isfinite(a), axis=1)]
    s = np.linalg.svd(a, compute_uv=False)
    rank = int(np.sum(s > 1e-8 * max(1.0, s[0])))
    return len(generators) - rank

