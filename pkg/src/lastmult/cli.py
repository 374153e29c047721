"""Command-line front end: ``python -m lastmult <command> [options]``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from lastmult import lagrange, legendre, multiplier, pdesolve, quantize
from lastmult.errors import LastMultError
from lastmult.mechsys import integrate, sho_system, symmetry_catalog
from lastmult.symkernel import I, equiv_up_to_constant, to_prefix

SCHEMA = "1"

DEFAULT_TOLERANCES = {
    "el": 1e-8,
    "equiv": 1e-9,
    "hamilton": 1e-5,
    "spread": 1e-6,
    "residual": 1e-9,
    "spectrum": 1e-3,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    k: float = 1.0
    seed: int = 0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise UsageError(f"--k must be positive, got {self.k}")
        for name, v in self.tolerances.items():
            if not v > 0:
                raise UsageError(f"tolerance {name} must be positive")

    def tol(self, name: str) -> float:
        return self.tolerances[name]


def parse_tolerances(items) -> dict:
    tol = dict(DEFAULT_TOLERANCES)
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or name not in tol:
            raise UsageError(f"bad --tolerance {item!r}; classes: {', '.join(sorted(tol))}")
        try:
            tol[name] = float(value)
        except ValueError:
            raise UsageError(f"bad tolerance value in {item!r}") from None
    return tol


def _clean(obj):
    """JSON-safe copy: complex -> [re, im], non-finite floats -> strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(float(obj.real)), _clean(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _real(z) -> float:
    return float(complex(z).real)


# --- commands -------------------------------------------------------------


def cmd_multipliers(cfg: RunConfig, args) -> tuple:
    sys_ = sho_system(cfg.k)
    pc = multiplier.enumerate_pairs(sys_, symmetry_catalog(cfg.k, args.catalog), seed=cfg.seed)
    report = {
        "catalog": args.catalog,
        "pairs": pc.to_json(),
        "pair_count": len(pc.entries),
        "zero_pairs": pc.zero_count,
        "distinct_basic": pc.distinct_basic,
        "expected": {"zero_pairs": 14, "distinct_basic": 3},
        "jlm34_identity": multiplier.jlm34_identity_holds(cfg.k, tol=cfg.tol("equiv"), seed=cfg.seed),
    }
    ok = pc.zero_count == 14 and pc.distinct_basic == 3 and report["jlm34_identity"]
    if not ok:
        report["diff"] = {"zero_pairs": pc.zero_count - 14, "distinct_basic": pc.distinct_basic - 3}
    return report, ok


def cmd_lagrangians(cfg: RunConfig, args) -> tuple:
    rows, ok = [], True
    for tag in lagrange.LAGRANGIAN_TAGS:
        L = lagrange.catalog_lagrangian(tag, cfg.k)
        el = lagrange.euler_lagrange_residual(L, lagrange.safe_points(tag, cfg.k, 100, cfg.seed))
        m = multiplier.catalog_multiplier("JLM" + tag[1:], cfg.k)
        c = equiv_up_to_constant(lagrange.hessian(L), m.value, tol=cfg.tol("equiv"), seed=cfg.seed, domain=L.domain())
        nr = lagrange.noether_report(L, seed=cfg.seed)
        rows.append(
            {
                "tag": tag,
                "value": to_prefix(L.value),
                "el_residual_max": el,
                "hessian_matches_multiplier": c is not None,
                "hessian_constant": c,
                "noether": nr.to_json(),
            }
        )
        ok &= el < cfg.tol("el") and c is not None
    counts = [r["noether"]["independent_noether"] for r in rows]
    ok &= counts == [5, 3, 3, 2]
    return {"lagrangians": rows, "noether_counts": counts, "expected_noether_counts": [5, 3, 3, 2]}, ok


def _trajectories(k: float) -> dict:
    s = sho_system(k)
    t_q = 1.0 / k
    out = {"H12": integrate(s, (1.0, 0.0), (0.0, 10.0), 1e-3)}
    tr = integrate(s, (1.0, 0.5), (0.0, 1.3 * t_q), 1e-3)
    out["H13"] = _shift(tr, 0.1 * t_q)
    tr = integrate(s, (0.5, 1.0), (0.0, 1.0 * t_q), 1e-3)
    out["H23"] = _shift(tr, 0.5 * t_q)
    out["H34"] = integrate(s, (2.0, 0.0), (0.0, 1.0 * t_q), 1e-3)
    return out


def _shift(tr, t0):
    """The oscillator is autonomous, so a trajectory may be relabelled to start at ``t0``."""
    from lastmult.mechsys import Trajectory

    return Trajectory(t0, tr.dt, tr.u1, tr.u2, tr.k, tr.method, dict(tr.meta))


def cmd_hamiltonians(cfg: RunConfig, args) -> tuple:
    rows, ok = [], True
    trajs = _trajectories(cfg.k)
    for tag in ("H12", "H13", "H23", "H34"):
        H, L, mm = legendre.catalog_hamiltonian(tag, cfg.k)
        row = {
            "tag": tag,
            "value": to_prefix(H.value),
            "u2_of_p": to_prefix(mm.u2_of_p),
            "domain": mm.domain,
            "legendre_identity": legendre.legendre_identity_holds(H, L, mm, tol=cfg.tol("equiv"), seed=cfg.seed),
            "round_trip": legendre.round_trip_holds(mm, tol=cfg.tol("equiv"), seed=cfg.seed),
            "hamilton_residual_max": legendre.hamilton_equations_residual(H, mm, trajs[tag]),
        }
        ok &= row["legendre_identity"] and row["round_trip"] and row["hamilton_residual_max"] < cfg.tol("hamilton")
        if tag == "H12":
            vals = legendre.hamiltonian_along(H, mm, trajs[tag])
            row["relative_drift"] = float(np.ptp(vals) / abs(vals[0]))
            ok &= row["relative_drift"] < 1e-8
        rows.append(row)
    g = legendre.goldstein_transform_check(cfg.k, seed=cfg.seed)
    ok &= g.passed
    return {"hamiltonians": rows, "goldstein_transform": g.to_json()}, ok


def cmd_quantize(cfg: RunConfig, args) -> tuple:
    if args.hamiltonian == "sho":
        form, dom = quantize.sho_form(cfg.k), quantize.SHO_DOMAIN
    else:
        form, dom = quantize.goldstein_form(), quantize.GOLDSTEIN_DOMAIN
    op = quantize.quantize(form, args.scheme, dom)
    report = {"operator": op.to_json()}
    ok = True
    if args.hamiltonian == "sho":
        others = {s: quantize.same_operator(op, quantize.quantize(form, s, dom)) for s in quantize.SCHEMES}
        report["matches_other_schemes"] = others
        ok &= all(others.values())
    else:
        coef = quantize.x_squared_coefficient(op)
        expected = {"two-term-symmetric": -6, "weyl": -3, "split-symmetric": -2}[args.scheme]
        report["x2_coefficient"] = coef
        report["x2_coefficient_expected"] = expected
        ok &= abs(coef - expected) < 1e-12
        tag = {v: k for k, v in quantize.SCHEME_FOR_PRINTED.items()}[args.scheme]
        report["matches_printed"] = quantize.same_operator(op, quantize.printed_operators()[tag])
        ok &= report["matches_printed"]
        if args.scheme == "split-symmetric":
            gens = pdesolve.goldstein_generators("split")
            ground = pdesolve.similarity_reduce(op, gens["Delta4+"])
            e0 = pdesolve.eigenvalue_of(op, gens["Delta3"], ground)
            report["ground_state"] = {"expression": to_prefix(ground.expression), "E0": e0}
            ok &= abs(e0 - 0.5) < 1e-12
        report["normalizability"] = pdesolve.nonphysical_check(tag, seed=cfg.seed)
    return report, ok


def cmd_ladder(cfg: RunConfig, args) -> tuple:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    fam = pdesolve.gauge_family(cfg.k)
    op = fam.operator()
    gens = pdesolve.gauge_generators(fam)
    g3 = gens["G3"].scale(I, "iG3")
    ground = pdesolve.similarity_reduce(op, gens["G1+"])
    states = pdesolve.ladder(op, gens["G1-"], ground, args.n, g3)
    eig = [_real(s.eigenvalue) for s in states]
    expected = [(j + 0.5) * cfg.k for j in range(args.n + 1)]
    ok = all(abs(a - b) < 1e-12 for a, b in zip(eig, expected))
    ok &= all(pdesolve.residual_ratio(op, s.expression, seed=cfg.seed) < cfg.tol("residual") for s in states)
    fd = pdesolve.fd_spectrum(op, (-10.0, 10.0), 2000, args.n + 1)
    fd_ok = all(abs(a - b) < cfg.tol("spectrum") for a, b in zip(fd.eigenvalues, eig))
    ok &= fd_ok
    refs = pdesolve.gauge_solutions(fam)
    return {
        "k": cfg.k,
        "states": [
            {
                "label": s.label,
                "expression": to_prefix(s.expression),
                "eigenvalue": s.eigenvalue,
                "constant_vs_printed": equiv_up_to_constant(s.expression, refs[j].expression, domain=op.domain) if j < len(refs) else None,
            }
            for j, s in enumerate(states)
        ],
        "eigenvalues": eig,
        "expected": expected,
        "fd_spectrum": fd.to_json(),
        "fd_agrees": fd_ok,
    }, ok


def cmd_verify_symmetries(cfg: RunConfig, args) -> tuple:
    cases = pdesolve.verification_cases(cfg.k, 0, args.variant)
    names = list(cases) if args.operator == "all" else [args.operator]
    out = [pdesolve.verify_case(cases[n], seed=cfg.seed) for n in names]
    ok = all(r["all_pass"] and not r["negative_control"]["passed"] for r in out)
    return {"variant": args.variant, "operators": out}, ok


def cmd_spectrum(cfg: RunConfig, args) -> tuple:
    op = pdesolve.gauge_family(cfg.k).operator()
    fd = pdesolve.fd_spectrum(op, (args.lower, args.upper), args.nodes, args.count)
    expected = [(j + 0.5) * cfg.k for j in range(args.count)]
    dev = max(abs(a - b) for a, b in zip(fd.eigenvalues, expected))
    return {"spectrum": fd.to_json(), "expected": expected, "max_deviation": dev}, dev < cfg.tol("spectrum")


COMMANDS = {
    "multipliers": cmd_multipliers,
    "lagrangians": cmd_lagrangians,
    "hamiltonians": cmd_hamiltonians,
    "quantize": cmd_quantize,
    "ladder": cmd_ladder,
    "verify-symmetries": cmd_verify_symmetries,
    "spectrum": cmd_spectrum,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=float, default=1.0, help="oscillator frequency (default 1)")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--tolerance", action="append", metavar="CLASS=VALUE", help="override a tolerance class")

    p = argparse.ArgumentParser(prog="lastmult", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    m = sub.add_parser("multipliers", parents=[common], help="classify the 28 symmetry pairs")
    m.add_argument("--catalog", choices=("printed", "prolonged"), default="printed")
    sub.add_parser("lagrangians", parents=[common], help="Euler-Lagrange and Noether checks")
    sub.add_parser("hamiltonians", parents=[common], help="Legendre transforms and Hamilton's equations")
    q = sub.add_parser("quantize", parents=[common], help="operator ordering comparison")
    q.add_argument("--scheme", choices=quantize.SCHEMES, default="weyl")
    q.add_argument("--hamiltonian", choices=("sho", "goldstein"), default="goldstein")
    lad = sub.add_parser("ladder", parents=[common], help="ground state and raised states")
    lad.add_argument("--n", type=int, default=2)
    v = sub.add_parser("verify-symmetries", parents=[common], help="evolutionary-representative checks")
    v.add_argument("--variant", choices=("printed", "corrected"), default="printed")
    v.add_argument("--operator", choices=("all", "sho", "goldstein-normal", "goldstein-weyl", "goldstein-split", "gauge"), default="all")
    s = sub.add_parser("spectrum", parents=[common], help="finite-difference oscillator spectrum")
    s.add_argument("--lower", type=float, default=-10.0)
    s.add_argument("--upper", type=float, default=10.0)
    s.add_argument("--nodes", type=int, default=2000)
    s.add_argument("--count", type=int, default=5)
    return p


def _text(report: dict, indent: int = 0) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(" " * indent + f"{key}:")
            lines.append(_text(value, indent + 2))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(" " * indent + f"{key}: ({len(value)} rows)")
            for row in value:
                lines.append(" " * (indent + 2) + ", ".join(f"{k}={v}" for k, v in row.items() if not isinstance(v, (dict, list))))
        else:
            lines.append(" " * indent + f"{key}: {value}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.k, args.seed, parse_tolerances(args.tolerance), args.out, args.format)
        report, ok = COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except LastMultError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    doc = _clean({"schema": SCHEMA, "command": args.command, "k": cfg.k, "seed": cfg.seed, "passed": bool(ok), **report})
    text = json.dumps(doc, indent=2, sort_keys=True) if cfg.format == "json" else _text(doc)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
