"""Solutions of the linear evolution equations: symmetry checks, reduction, ladders, spectra."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy import integrate
from scipy.linalg import eigh_tridiagonal

from lastmult.errors import (
    LadderTerminated,
    NonEigenfunctionError,
    ReductionError,
    UnsupportedError,
)
from lastmult.mechsys import PDE, GeneratorField, symmetry_commutator
from lastmult.quantize import (
    GOLDSTEIN_DOMAIN,
    SHO_DOMAIN,
    EvolutionOperator,
    apply,
    general_gauge_operator,
    printed_operators,
)
from lastmult.symkernel import (
    Apply,
    Const,
    Expr,
    I,
    Mul,
    Pow,
    SampleDomain,
    Sym,
    add,
    as_expr,
    compile_expr,
    cos,
    differentiate,
    equiv_up_to_constant,
    evaluate_array,
    exp,
    is_constant,
    is_identically_zero,
    log,
    mul,
    power,
    sample_points,
    sin,
    substitute,
)

T, X, U = Sym("t"), Sym("x"), Sym("u")
HALF = Fraction(1, 2)
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class SolutionCatalogEntry:
    expression: Expr
    operator: str
    label: str
    eigenvalue: complex | None = None
    normalizable: bool | None = None
    domain_note: str = ""
    constant: complex | None = None


def pde_field(xi_t, xi_x, eta, tag) -> GeneratorField:
    return GeneratorField(PDE, (xi_t, xi_x, eta), tag)


def solution_field(s: Expr, tag: str = "s") -> GeneratorField:
    return pde_field(0, 0, s, tag)


# --- generator catalogs -------------------------------------------------


def standard_generators(variant: str = "printed") -> dict:
    """Point symmetries of ``i u_t = -u_xx/2 + x^2 u/2``.

    The printed ``d/du`` coefficient of the lowering dilation ``G1-`` is
    ``-(x^2 + 1/2)``; ``variant="corrected"`` uses ``1/2 - x^2``, which is
    what the determining equations require.
    """
    ep, em = exp(2 * I * T), exp(-2 * I * T)
    gens = {
        "G1+": pde_field(mul(I, ep), -X * ep, (X**2 + HALF) * ep * U, "G1+"),
        "G3": pde_field(I, 0, 0, "G3"),
        "G4+": pde_field(0, exp(I * T), -X * exp(I * T) * U, "G4+"),
        "G4-": pde_field(0, -exp(-I * T), -X * exp(-I * T) * U, "G4-"),
        "G6": pde_field(0, 0, U, "G6"),
    }
    if variant == "printed":
        gens["G1-"] = pde_field(mul(-1, I, em), -X * em, -(X**2 + HALF) * em * U, "G1-")
    elif variant == "corrected":
        gens["G1-"] = pde_field(mul(-1, I, em), -X * em, (HALF - X**2) * em * U, "G1-")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return dict(sorted(gens.items()))


def goldstein_generators(kind: str) -> dict:
    """Symmetries listed for the three orderings of the Goldstein Hamiltonian."""
    prefix = {"normal": "Phi", "weyl": "Sigma", "split": "Delta"}[kind]
    gens = {}
    for sign, s in (("+", 1), ("-", -1)):
        e = exp(2 * s * I * T)
        gens[f"{prefix}1{sign}"] = pde_field(mul(s, I, e), X * e, (-HALF + s * power(X, -2)) * e * U, f"{prefix}1{sign}")
    if kind == "split":
        gens[f"{prefix}3"] = pde_field(I, 0, 0, f"{prefix}3")
        for sign, s in (("+", 1), ("-", -1)):
            e = exp(s * I * T)
            gens[f"{prefix}4{sign}"] = pde_field(0, X**2 * e, (-X + s * power(X, -1)) * e * U, f"{prefix}4{sign}")
        gens[f"{prefix}6"] = pde_field(0, 0, U, f"{prefix}6")
    else:
        gens[f"{prefix}3"] = pde_field(1, 0, 0, f"{prefix}3")
        gens[f"{prefix}4"] = pde_field(0, 0, U, f"{prefix}4")
    return gens


@dataclass(frozen=True)
class GaugeFamily:
    """Oscillator of frequency ``k`` with gauge potential ``g``: ``f1 = g_x``, ``f2 = g_t - k^2 x^2/2``."""

    k: float
    g: Expr

    @property
    def f1(self) -> Expr:
        return differentiate(self.g, "x")

    @property
    def f2(self) -> Expr:
        return differentiate(self.g, "t") - mul(self.k**2 / 2, X**2)

    def operator(self) -> EvolutionOperator:
        return general_gauge_operator(self.f1, self.f2)


def gauge_family(k: float = 1.0, g=0) -> GaugeFamily:
    return GaugeFamily(float(k), as_expr(g))


def gauge_generators(fam: GaugeFamily) -> dict:
    k, f1, f2 = fam.k, fam.f1, fam.f2
    c, s = cos(k * T), sin(k * T)
    c2, s2 = cos(2 * k * T), sin(2 * k * T)
    kx = mul(k, X)
    iu = mul(I, U)
    v = f2 - mul(k * k / 2, X**2)
    w = mul(I, X, f1) - HALF
    gens = {
        "G1": pde_field(0, c, (c * f1 - s * kx) * iu, "G1"),
        "G2": pde_field(0, -s, -(s * f1 + c * kx) * iu, "G2"),
        "G3": pde_field(1, 0, (f2 + mul(k * k / 2, X**2)) * iu, "G3"),
        "G4": pde_field(c2, -s2 * kx, (mul(I, c2, v) - k * s2 * w) * U, "G4"),
        "G5": pde_field(-s2, -c2 * kx, -(mul(I, s2, v) + k * c2 * w) * U, "G5"),
        "G6": pde_field(0, 0, U, "G6"),
    }
    for sign, sg in (("+", 1), ("-", -1)):
        e1 = exp(mul(sg * k, I, T))
        gens[f"G1{sign}"] = pde_field(0, e1, e1 * mul(I, f1 + mul(sg * k, I, X)) * U, f"G1{sign}")
        e2 = exp(mul(2 * sg * k, I, T))
        gens[f"G4{sign}"] = pde_field(e2, e2 * mul(sg * k, I, X), e2 * mul(I, v + mul(sg * k, w)) * U, f"G4{sign}")
    return gens


def corrupt(g: GeneratorField) -> GeneratorField:
    """Negative control: flip the sign of the ``d/dx`` coefficient."""
    xi_t, xi_x, eta = g.coeffs
    return pde_field(xi_t, -xi_x, eta, f"corrupt({g.tag})")


# --- residuals and symmetry verification --------------------------------


def residual_ratio(op: EvolutionOperator, u: Expr, samples: int = 32, seed: int = 0, domain=None) -> float:
    """Max of ``|apply(op, u)| / (1 + sum of |term|)`` over sample points."""
    domain = domain or op.domain
    u = as_expr(u)
    parts = [
        mul(2, I, differentiate(u, "t")),
        mul(op.a, differentiate(u, "x", 2)),
        mul(op.b, differentiate(u, "x")),
        mul(op.c, u),
    ]
    pts = sample_points({"t", "x"}, samples, seed, domain)
    vals = [np.broadcast_to(evaluate_array(p, pts, strict=False), (samples,)) for p in parts]
    res = vals[0] - vals[1] - vals[2] - vals[3]
    scale = 1 + sum(np.abs(v) for v in vals)
    ratio = np.abs(res) / scale
    ratio = ratio[np.isfinite(ratio)]
    return float(ratio.max()) if len(ratio) else math.inf


def is_solution(op, u, tol: float = RESIDUAL_TOL, **kw) -> bool:
    return residual_ratio(op, u, **kw) < tol


def evolutionary(g: GeneratorField, s: Expr) -> Expr:
    """``Q = eta(u -> s) - xi_t s_t - xi_x s_x``."""
    xi_t, xi_x, eta = g.coeffs
    return substitute(eta, "u", s) - mul(xi_t, differentiate(s, "t")) - mul(xi_x, differentiate(s, "x"))


def verify_symmetry(op: EvolutionOperator, g: GeneratorField, basis: list, tol: float = RESIDUAL_TOL, seed: int = 0) -> dict:
    if not basis:
        raise ValueError("verify_symmetry needs at least one basis solution")
    if g.coords != PDE:
        raise ValueError("PDE-signature generator required")
    rows = []
    for entry in basis:
        r = residual_ratio(op, evolutionary(g, entry.expression), seed=seed)
        rows.append({"generator": g.tag, "solution": entry.label, "max_residual": r, "passed": r < tol})
    return {"operator": op.source, "generator": g.tag, "passed": all(r["passed"] for r in rows), "results": rows}


# --- similarity reduction ----------------------------------------------


def _split_x(term: Expr):
    """``(x-free coefficient, x-dependent part)`` of a product term."""
    factors = term.factors if isinstance(term, Mul) else (term,)
    free, dep = [], []
    for f in factors:
        (dep if "x" in f.free_symbols else free).append(f)
    return mul(*free), mul(*dep)


def antiderivative_x(e: Expr, table: dict | None = None) -> Expr:
    """Term-by-term ``x``-antiderivative for monomials ``x^n`` plus a caller table."""
    table = table or {}
    out = []
    terms = e.terms if e.__class__.__name__ == "Add" else (e,)
    for term in terms:
        coef, dep = _split_x(term)
        if dep == as_expr(1):
            out.append(mul(coef, X))
        elif dep == X:
            out.append(mul(coef, HALF, X**2))
        elif isinstance(dep, Pow) and dep.base == X:
            n = dep.exp
            out.append(mul(coef, log(X)) if n == -1 else mul(coef, Fraction(1) / (n + 1), power(X, n + 1)))
        elif dep in table:
            out.append(mul(coef, table[dep]))
        else:
            raise ReductionError(f"no antiderivative for {dep!r}", residual=dep)
    return add(*out)


def _exp_of(e: Expr) -> Expr:
    """``exp(e)`` with rational multiples of ``log x`` pulled out as powers of ``x``."""
    plain, pw = [], Fraction(0)
    terms = e.terms if e.__class__.__name__ == "Add" else (e,)
    for term in terms:
        coef, dep = _split_x(term)
        if isinstance(dep, Apply) and dep.fn == "log" and dep.arg == X and isinstance(coef, Const):
            try:
                pw += Fraction(coef.value.re) if coef.value.im == 0 else None
                continue
            except (AttributeError, TypeError):
                pass
        plain.append(term)
    return mul(power(X, pw), exp(add(*plain)))


def similarity_reduce(op: EvolutionOperator, g: GeneratorField, table: dict | None = None, label: str = "u0", domain=None) -> SolutionCatalogEntry:
    """Invariant solution ``h(t) exp(int eta/(u xi_x) dx)`` of a generator without a ``d/dt`` part."""
    xi_t, xi_x, eta = g.coeffs
    if xi_t != as_expr(0):
        raise ReductionError("generator has a d/dt component", residual=xi_t)
    phi = differentiate(eta, "u")
    if "u" in phi.free_symbols:
        raise ReductionError("generator is not linear in u", residual=phi)
    ratio = mul(phi, power(xi_x, -1))
    profile = _exp_of(antiderivative_x(ratio, table))
    domain = domain or op.domain
    r = mul(apply(op, profile), power(profile, -1))
    lam2 = is_constant(r, domain=domain)
    if lam2 is None:
        raise ReductionError("reduction does not close to a constant-coefficient equation for h(t)", residual=r)
    lam = -lam2 / 2
    lam = complex(round(lam.real, 12) + 0.0, round(lam.imag, 12) + 0.0)
    u = mul(exp(mul(-1, I, _exact(lam), T)), profile)
    if not is_solution(op, u, domain=domain):
        raise ReductionError("reduced solution fails the equation", residual=apply(op, u))
    return SolutionCatalogEntry(u, op.source, label, lam, None, f"reduced by {g.tag}")


def _exact(z: complex):
    """Snap a numerically recovered value to a small rational when it is one."""
    re = Fraction(z.real).limit_denominator(1000)
    im = Fraction(z.imag).limit_denominator(1000)
    if abs(float(re) - z.real) < 1e-10 and abs(float(im) - z.imag) < 1e-10:
        return as_expr(float(re)) if im == 0 else add(float(re), mul(float(im), I))
    return as_expr(z)


# --- ladders and eigenvalues --------------------------------------------


def ladder_step(op: EvolutionOperator, g: GeneratorField, current: SolutionCatalogEntry, label: str | None = None, g3=None) -> SolutionCatalogEntry:
    """New solution from the ``d/du`` part of ``[g, current d/du]``."""
    bracket = symmetry_commutator(g, solution_field(current.expression, current.label))
    s = bracket.coefficient("u")
    if is_identically_zero(s, domain=op.domain, tol=1e-12):
        raise LadderTerminated(f"{g.tag} annihilates {current.label}")
    if not is_solution(op, s):
        raise ReductionError(f"bracket with {g.tag} is not a solution", residual=apply(op, s))
    entry = SolutionCatalogEntry(s, op.source, label or f"{g.tag}({current.label})", None, None, f"[{g.tag}, {current.label}]")
    if g3 is not None:
        entry = replace(entry, eigenvalue=eigenvalue_of(op, g3, entry))
    return entry


def eigenvalue_of(op: EvolutionOperator, g3: GeneratorField, entry: SolutionCatalogEntry) -> complex:
    """``lambda`` with ``[g3, s d/du] = lambda s d/du``."""
    s = entry.expression
    action = symmetry_commutator(g3, solution_field(s)).coefficient("u")
    lam = equiv_up_to_constant(action, s, domain=op.domain)
    if lam is None:
        raise NonEigenfunctionError(f"{entry.label} is not an eigenfunction of {g3.tag}")
    return complex(round(lam.real, 12) + 0.0, round(lam.imag, 12) + 0.0)


def ladder(op, g_raise, ground: SolutionCatalogEntry, n: int, g3=None) -> list:
    out = [ground if g3 is None else replace(ground, eigenvalue=eigenvalue_of(op, g3, ground))]
    for j in range(1, n + 1):
        out.append(ladder_step(op, g_raise, out[-1], f"u{j}", g3))
    return out


# --- catalogued solutions -----------------------------------------------


def standard_solutions() -> list:
    op = "sho"
    return [
        SolutionCatalogEntry(exp(-I * T / 2 - X**2 / 2), op, "u0", 0.5, True, "x real"),
        SolutionCatalogEntry(2 * X * exp(-3 * I * T / 2 - X**2 / 2), op, "u1", 1.5, True, "x real"),
        SolutionCatalogEntry((4 * X**2 - 2) * exp(-5 * I * T / 2 - X**2 / 2), op, "u2", 2.5, True, "x real"),
    ]


def gauge_solutions(fam: GaugeFamily) -> list:
    k, g = fam.k, fam.g
    base = lambda m: exp(mul(-m * k / 2, I, T) - mul(k / 2, X**2) + mul(I, g))
    return [
        SolutionCatalogEntry(base(1), "gauge", "u0", k / 2, True, "x real"),
        SolutionCatalogEntry(mul(-2 * k, X, base(3)), "gauge", "u1", 3 * k / 2, True, "x real"),
        SolutionCatalogEntry(mul(4 * k * k, X**2) * base(5) - mul(2 * k, base(5)), "gauge", "u2", 5 * k / 2, True, "x real"),
    ]


def split_ground_state() -> SolutionCatalogEntry:
    return SolutionCatalogEntry(power(X, -1) * exp(-I * T / 2 - power(X, -2) / 2), "goldstein-split", "u0", 0.5, True, "x > 0")


def split_solutions(n: int = 2) -> list:
    op = printed_operators()["goldstein-split"]
    gens = goldstein_generators("split")
    return ladder(op, gens["Delta4-"], split_ground_state(), n, gens["Delta3"])


_NONPHYS_C = {"goldstein-normal": 6, "goldstein-weyl": 3}


def power_branch(mu: complex) -> Expr:
    """``exp(it/2 - 1/(2x^2)) (x e^{it})^mu`` on the principal branch for ``t`` in ``(-pi, pi]``."""
    return exp(I * T / 2 - power(X, -2) / 2 + mul(mu, log(X) + I * T))


def printed_exponents(tag: str) -> tuple:
    im = math.sqrt(15) / 2 if tag == "goldstein-normal" else math.sqrt(3) / 2
    return complex(-1, -im), complex(-1, im)


def nonphysical_solutions(tag: str, exponents=None) -> list:
    exps = printed_exponents(tag) if exponents is None else exponents
    return [SolutionCatalogEntry(power_branch(m), tag, f"{'AB'[i]}", None, None, "x > 0, |t| < pi") for i, m in enumerate(exps)]


def extract_exponents(op: EvolutionOperator, seed: int = 0) -> tuple:
    """Roots of the indicial quadratic of the power-branch ansatz.

    ``R(mu) = apply(op, u_mu) / u_mu`` factors as ``rho(x) q(mu)``; the
    ratios ``R(mu) / R(0)`` are constants that fix ``q`` up to scale.
    """
    def reduced(mu):
        u = power_branch(mu)
        return mul(apply(op, u), power(u, -1))

    ref = reduced(0.0)
    vals = []
    for mu in (-1.0, 1.0):
        c = is_constant(mul(reduced(mu), power(ref, -1)), domain=op.domain, seed=seed)
        if c is None:
            raise ReductionError("power-branch ansatz does not reduce to an indicial equation", residual=reduced(mu))
        vals.append(c)
    rm, rp = vals
    a2 = (rp + rm) / 2 - 1
    a1 = (rp - rm) / 2
    roots = np.roots([a2, a1, 1.0])
    return tuple(sorted((complex(z) for z in roots), key=lambda z: (round(z.real, 9), z.imag)))


def _norm_sq(entry: SolutionCatalogEntry, t: float):
    f = compile_expr(entry.expression, ("t", "x"))
    return lambda x: float(abs(complex(f(t, x))) ** 2)


def _slope(f, a, b) -> float:
    """Log-log slope of ``f`` between ``a`` and ``b``; ``-inf`` when ``f(b)`` underflows."""
    fa, fb = f(a), f(b)
    if fb == 0.0:
        return -math.inf
    if fa == 0.0:
        return math.inf
    return math.log(fb / fa) / math.log(b / a)


def quadrature_probe(entry: SolutionCatalogEntry, eps: float = 1e-3, big: float = 50.0) -> dict:
    """Numerical normalizability test for ``x > 0`` states.

    ``|u|^2`` is integrated over ``[eps, big]`` at ``t = 0`` and ``t = 1``.
    Each end converges when the local power law of the integrand is
    integrable there: slope above ``-1`` towards the origin, below ``-1``
    towards infinity. A norm that changes with ``t`` marks a state that is
    not stationary, so it cannot describe a physical level.
    """
    f0 = _norm_sq(entry, 0.0)

    def integral(t):
        return integrate.quad(_norm_sq(entry, t), eps, big, limit=400, points=[1.0])[0]

    base, later = integral(0.0), integral(1.0)
    slope_origin = -_slope(f0, eps, eps / 10)
    slope_inf = _slope(f0, big, 4 * big)
    conv_origin = slope_origin > -1
    conv_inf = slope_inf < -1
    drift = abs(later - base) / max(base, 1e-300)
    stationary = drift < 1e-6
    return {
        "label": entry.label,
        "norm_t0": base,
        "norm_t1": later,
        "relative_norm_change": drift,
        "power_law_origin": slope_origin,
        "power_law_infinity": slope_inf,
        "origin_converges": bool(conv_origin),
        "infinity_converges": bool(conv_inf),
        "stationary_norm": bool(stationary),
        "normalizable": bool(conv_origin and conv_inf and stationary),
        "interval": [eps, big],
    }


def nonphysical_check(tag: str, seed: int = 0) -> dict:
    op = printed_operators()[tag]
    extracted = extract_exponents(op, seed=seed)
    report = {
        "operator": tag,
        "extracted_exponents": [[z.real, z.imag] for z in extracted],
        "extracted_imag_abs": abs(extracted[0].imag),
    }
    if tag in _NONPHYS_C:
        target = math.sqrt(4 * _NONPHYS_C[tag] - 9) / 2
        printed = nonphysical_solutions(tag)
        corrected = nonphysical_solutions(tag, extracted)
        report.update(
            {
                "printed_exponents": [[z.real, z.imag] for z in printed_exponents(tag)],
                "printed_residual": max(residual_ratio(op, e.expression, seed=seed) for e in printed),
                "corrected_residual": max(residual_ratio(op, e.expression, seed=seed) for e in corrected),
                "imag_part_expected": target,
                "imag_part_error": abs(abs(extracted[0].imag) - target),
                "probes": [quadrature_probe(e) for e in corrected],
            }
        )
        report["physical"] = any(p["normalizable"] for p in report["probes"])
    else:
        ground = split_ground_state()
        report.update(
            {
                "ground_state_residual": residual_ratio(op, ground.expression, seed=seed),
                "probes": [quadrature_probe(ground)],
            }
        )
        report["physical"] = report["probes"][0]["normalizable"]
    return report


# --- finite-difference spectrum -----------------------------------------


@dataclass(frozen=True)
class SpectrumResult:
    interval: tuple
    nodes: int
    eigenvalues: list
    boundary: str = "Dirichlet at both ends"

    def to_json(self) -> dict:
        return {"interval": list(self.interval), "nodes": self.nodes, "eigenvalues": [round(e, 10) for e in self.eigenvalues], "boundary": self.boundary}


def fd_spectrum(op: EvolutionOperator, interval=(-10.0, 10.0), nodes: int = 2000, count: int = 5) -> SpectrumResult:
    """Lowest eigenvalues of ``-u''/2 + c(x) u/2`` on a uniform interior grid."""
    if nodes < 10:
        raise ValueError("at least 10 grid nodes required")
    dom = SampleDomain(box=(0.3, 2.0), boxes={"x": tuple(interval)})
    if not (is_constant(op.a, domain=dom) == -1 and is_identically_zero(op.b, domain=dom)):
        raise UnsupportedError("finite-difference spectrum needs a = -1, b = 0")
    if "t" in op.c.free_symbols:
        raise UnsupportedError("time-dependent potential")
    lo, hi = map(float, interval)
    h = (hi - lo) / (nodes + 1)
    x = lo + h * np.arange(1, nodes + 1)
    cx = np.real(np.broadcast_to(evaluate_array(op.c, {"x": x}), x.shape))
    diag = 1.0 / h**2 + 0.5 * cx
    off = np.full(nodes - 1, -0.5 / h**2)
    count = min(count, nodes)
    w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))
    return SpectrumResult((lo, hi), nodes, sorted(float(v) for v in w))


def box_levels(length: float, count: int) -> list:
    """Dirichlet box energies ``(n pi / L)^2 / 2``."""
    return [0.5 * (n * math.pi / length) ** 2 for n in range(1, count + 1)]


# --- exports ---------------------------------------------------------------


def residual_grid(op: EvolutionOperator, u: Expr, xs, ts) -> list:
    f = apply(op, u)
    xx, tt = np.meshgrid(np.asarray(xs, float), np.asarray(ts, float), indexing="ij")
    vals = np.abs(evaluate_array(f, {"x": xx, "t": tt}, strict=False))
    return [(float(a), float(b), float(c)) for a, b, c in zip(xx.ravel(), tt.ravel(), vals.ravel())]


def write_residual_csv(rows, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "t", "abs_residual"])
        for row in rows:
            w.writerow([f"{v:.17g}" for v in row])


@dataclass
class OperatorCase:
    """An operator with its generator catalog, solution basis and ladder pieces."""

    op: EvolutionOperator
    generators: dict
    basis: list
    negative_control: str
    extras: dict = field(default_factory=dict)


def verification_cases(k: float = 1.0, g=0, variant: str = "printed") -> dict:
    ops = printed_operators()
    fam = gauge_family(k, g)
    cases = {
        "sho": OperatorCase(ops["sho"], standard_generators(variant), standard_solutions(), "G1+"),
        "goldstein-normal": OperatorCase(
            ops["goldstein-normal"], goldstein_generators("normal"), nonphysical_solutions("goldstein-normal", extract_exponents(ops["goldstein-normal"])), "Phi1+"
        ),
        "goldstein-weyl": OperatorCase(
            ops["goldstein-weyl"], goldstein_generators("weyl"), nonphysical_solutions("goldstein-weyl", extract_exponents(ops["goldstein-weyl"])), "Sigma1+"
        ),
        "goldstein-split": OperatorCase(ops["goldstein-split"], goldstein_generators("split"), split_solutions(2), "Delta1+"),
        "gauge": OperatorCase(fam.operator(), gauge_generators(fam), gauge_solutions(fam), "G1"),
    }
    return cases


def verify_case(case: OperatorCase, seed: int = 0) -> dict:
    rows = [verify_symmetry(case.op, g, case.basis, seed=seed) for g in case.generators.values()]
    neg = verify_symmetry(case.op, corrupt(case.generators[case.negative_control]), case.basis, seed=seed)
    return {
        "operator": case.op.source,
        "generators": rows,
        "all_pass": all(r["passed"] for r in rows),
        "negative_control": {"generator": neg["generator"], "passed": neg["passed"]},
    }


__all__ = [
    "SolutionCatalogEntry",
    "SpectrumResult",
    "GaugeFamily",
    "OperatorCase",
    "standard_generators",
    "goldstein_generators",
    "gauge_family",
    "gauge_generators",
    "corrupt",
    "residual_ratio",
    "is_solution",
    "evolutionary",
    "verify_symmetry",
    "antiderivative_x",
    "similarity_reduce",
    "ladder_step",
    "ladder",
    "eigenvalue_of",
    "standard_solutions",
    "gauge_solutions",
    "split_ground_state",
    "split_solutions",
    "power_branch",
    "printed_exponents",
    "nonphysical_solutions",
    "extract_exponents",
    "quadrature_probe",
    "nonphysical_check",
    "fd_spectrum",
    "box_levels",
    "residual_grid",
    "write_residual_csv",
    "verification_cases",
    "verify_case",
    "GOLDSTEIN_DOMAIN",
    "SHO_DOMAIN",
]
