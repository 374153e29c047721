"""Canonical momenta, Legendre transforms of the catalog Lagrangians and Hamilton's equations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lastmult.errors import PoleError, UnsupportedError
from lastmult.lagrange import LAGRANGIAN_TAGS, VariationalPair, catalog_lagrangian, default_gauge, safe_domain
from lastmult.mechsys import U1, T, Trajectory
from lastmult.symkernel import (
    Expr,
    SampleDomain,
    Sym,
    add,
    cos,
    cot,
    differentiate,
    equiv,
    evaluate,
    evaluate_array,
    exp,
    log,
    mul,
    power,
    sin,
    substitute,
    substitute_all,
    tan,
)

P = Sym("p")
Q = Sym("q")
CANONICAL = ("t", "u1", "p")


def canonical_momentum(L: VariationalPair) -> Expr:
    """``dL/du2``."""
    return differentiate(L.value, "u2")


@dataclass(frozen=True)
class MomentumMap:
    p_of_u2: Expr
    u2_of_p: Expr
    domain: str
    p_domain: SampleDomain

    def round_trip_p(self) -> Expr:
        """``p(u2(p))``, which should reduce to ``p``."""
        return substitute(self.p_of_u2, "u2", self.u2_of_p)

    def round_trip_u2(self) -> Expr:
        return substitute(self.u2_of_p, "p", self.p_of_u2)


def _p_domain(tag: str, k: float, f1: Expr) -> SampleDomain:
    t_box = safe_domain(tag, k).bounds("t")
    boxes = {"t": t_box, "p": (-1.0, 1.0)}
    if tag == "L34":
        boxes["u1"] = (0.5, 2.0)
        f1n = f1

        def where(pts):
            shift = np.real(evaluate_array(f1n, {n: pts[n] for n in ("t", "u1")})) if f1n.free_symbols else float(np.real(evaluate(f1n, {})))
            return np.abs(k * pts["u1"] * (pts["p"] - shift)) < 1.4

        return SampleDomain(box=(0.3, 2.0), boxes=boxes, where=where)
    return SampleDomain(box=(0.3, 2.0), boxes=boxes)


_DOMAIN_TEXT = {
    "L12": "all (t, u1, p)",
    "L13": "cos kt > 0 and k u1 sin kt + u2 cos kt > 0",
    "L23": "sin kt > 0 and -k u1 cos kt + u2 sin kt > 0",
    "L34": "u1 > 0 and |k u1 (p - f1)| < pi/2 (principal branch)",
}


def momentum_map(L: VariationalPair) -> MomentumMap:
    k, f1, tag = L.k, L.f1, L.tag
    w = P - f1
    if tag == "L12":
        u2 = w
    elif tag == "L13":
        u2 = -k * U1 * tan(k * T) + exp(cos(k * T) * w) / cos(k * T)
    elif tag == "L23":
        u2 = k * U1 * cot(k * T) + exp(sin(k * T) * w) / sin(k * T)
    elif tag == "L34":
        u2 = k * U1 * tan(k * U1 * w)
    else:
        raise UnsupportedError(f"no momentum inversion for {tag!r}")
    return MomentumMap(canonical_momentum(L), u2, _DOMAIN_TEXT[tag], _p_domain(tag, k, f1))


def _hamiltonian_value(tag: str, k: float, f1: Expr, f2: Expr) -> Expr:
    w = P - f1
    if tag == "L12":
        return P**2 / 2 - P * f1 + f1**2 / 2 - f2
    if tag == "L13":
        c = cos(k * T)
        return exp(c * w) / c**2 - k * U1 * tan(k * T) * w - f2
    if tag == "L23":
        s = sin(k * T)
        return exp(s * w) / s**2 + k * U1 * cot(k * T) * w - f2
    if tag == "L34":
        return log(tan(k * U1 * w) ** 2 + 1) / 2 - f2
    raise UnsupportedError(f"no closed-form Hamiltonian for {tag!r}")


def catalog_hamiltonian(tag: str, k: float, f1=None, f2=None) -> tuple:
    """``(H, L, MomentumMap)`` for a catalog tag (``L12``... or ``H12``...)."""
    ltag = "L" + tag[1:] if tag.startswith("H") else tag
    if ltag not in LAGRANGIAN_TAGS:
        raise UnsupportedError(f"unknown Hamiltonian tag {tag!r}")
    if f1 is None and f2 is None:
        f1, f2 = default_gauge(ltag, k)
    L = catalog_lagrangian(ltag, k, f1, f2)
    value = _hamiltonian_value(ltag, k, L.f1, L.f2)
    H = VariationalPair("Hamiltonian", value, L.f1, L.f2, L.constraint, "H" + ltag[1:], k)
    return H, L, momentum_map(L)


def legendre_defect(H: VariationalPair, L: VariationalPair, mm: MomentumMap) -> Expr:
    """``H + L(u2(p)) - p u2(p)`` as a function of ``(t, u1, p)``."""
    u2 = mm.u2_of_p
    return H.value + substitute(L.value, "u2", u2) - P * u2


def legendre_identity_holds(H, L, mm, tol: float = 1e-9, seed: int = 0) -> bool:
    return equiv(legendre_defect(H, L, mm), 0, tol=tol, seed=seed, domain=mm.p_domain)


def round_trip_holds(mm: MomentumMap, tol: float = 1e-9, seed: int = 0) -> bool:
    return equiv(mm.round_trip_p(), P, tol=tol, seed=seed, domain=mm.p_domain)


def _ddt(y: np.ndarray, dt: float) -> np.ndarray:
    """Fourth-order finite-difference derivative on a uniform grid."""
    n = len(y)
    if n < 5:
        return np.gradient(y, dt, edge_order=2)
    d = np.empty_like(y)
    d[2:-2] = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * dt)
    head, tail = np.asarray(y[:5]), np.asarray(y[-5:][::-1])
    for i, coef in enumerate(((-25, 48, -36, 16, -3), (-3, -10, 18, -6, 1))):
        d[i] = np.dot(coef, head) / (12 * dt)
        d[n - 1 - i] = -np.dot(coef, tail) / (12 * dt)
    return d


def hamilton_equations_residual(H: VariationalPair, mm: MomentumMap, traj: Trajectory) -> float:
    """Max of ``|u1' - dH/dp|`` and ``|p' + dH/du1|`` over the trajectory nodes."""
    b = traj.bindings()
    try:
        p = np.real(evaluate_array(mm.p_of_u2, b))
        cb = {"t": b["t"], "u1": b["u1"], "p": p}
        dh_dp = np.real(evaluate_array(differentiate(H.value, "p"), cb))
        dh_du1 = np.real(evaluate_array(differentiate(H.value, "u1"), cb))
    except PoleError as exc:
        raise PoleError(f"Hamiltonian singular at trajectory node {exc.index}", location=exc.location, index=exc.index) from exc
    r1 = np.abs(_ddt(traj.u1, traj.dt) - dh_dp)
    r2 = np.abs(_ddt(p, traj.dt) + dh_du1)
    return float(max(r1.max(), r2.max()))


def hamiltonian_along(H: VariationalPair, mm: MomentumMap, traj: Trajectory) -> np.ndarray:
    b = traj.bindings()
    p = np.real(evaluate_array(mm.p_of_u2, b))
    return np.real(evaluate_array(H.value, {"t": b["t"], "u1": b["u1"], "p": p}))


@dataclass(frozen=True)
class GoldsteinReport:
    identity: bool
    spot_value: tuple
    parity: bool
    poisson_bracket: bool

    @property
    def passed(self) -> bool:
        return self.identity and self.parity and self.poisson_bracket and abs(self.spot_value[0] - self.spot_value[1]) < 1e-12

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "spot_check": {"q": 2.0, "p": 0.3, "lhs": self.spot_value[0], "rhs": self.spot_value[1]},
            "parity": self.parity,
            "poisson_bracket_is_one": self.poisson_bracket,
            "passed": self.passed,
        }


def goldstein_transform_check(k: float = 1.0, seed: int = 0) -> GoldsteinReport:
    """``q~ = -1/q, p~ = p q^2`` carries ``(p~^2 + q~^2)/2`` into ``(1/q^2 + p^2 q^4)/2``.

    ``k`` only enters through the sampling box; the transformation is scale free.
    """
    qt, pt = -power(Q, -1), P * Q**2
    lhs = substitute_all((Sym("pt") ** 2 + Sym("qt") ** 2) / 2, {"qt": qt, "pt": pt})
    rhs = (power(Q, -2) + P**2 * Q**4) / 2
    dom = SampleDomain(box=(0.3 / k, 2.0 / k), boxes={"p": (-2.0, 2.0)})
    identity = equiv(lhs, rhs, seed=seed, domain=dom)
    spot = {"q": 2.0, "p": 0.3}
    spot_value = (evaluate(lhs, spot).real, evaluate(rhs, spot).real)
    flipped = substitute_all(rhs, {"q": -Q, "p": -P})
    parity = equiv(flipped, rhs, seed=seed, domain=dom)
    pb = add(mul(differentiate(qt, "q"), differentiate(pt, "p")), mul(-1, differentiate(qt, "p"), differentiate(pt, "q")))
    poisson = equiv(pb, 1, seed=seed, domain=dom)
    return GoldsteinReport(identity, spot_value, parity, poisson)


def hamiltonian_report(tag: str, k: float, traj: Trajectory | None = None, seed: int = 0) -> dict:
    H, L, mm = catalog_hamiltonian(tag, k)
    out = {
        "tag": H.tag,
        "domain": mm.domain,
        "legendre_identity": legendre_identity_holds(H, L, mm, seed=seed),
        "round_trip": round_trip_holds(mm, seed=seed),
    }
    if traj is not None:
        out["hamilton_residual_max"] = hamilton_equations_residual(H, mm, traj)
    return out


__all__ = [
    "P",
    "Q",
    "MomentumMap",
    "GoldsteinReport",
    "canonical_momentum",
    "momentum_map",
    "catalog_hamiltonian",
    "legendre_defect",
    "legendre_identity_holds",
    "round_trip_holds",
    "hamilton_equations_residual",
    "hamiltonian_along",
    "goldstein_transform_check",
    "hamiltonian_report",
]
