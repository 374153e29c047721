"""Compare the published formulas with recomputed ones where they disagree.

Prints the d/du2 mismatch of each phase-space generator, the zero-pair
counts of both catalog variants, the printed versus corrected lowering
dilation of the oscillator, and the exponents of the power-branch solutions.
"""

from lastmult import multiplier, pdesolve, quantize
from lastmult.mechsys import prolongation_mismatch, sho_system, symmetry_catalog
from lastmult.symkernel import is_identically_zero, to_prefix


def generators(k):
    print(f"d/du2 coefficient vs first prolongation (k={k})")
    for g in symmetry_catalog(k, "printed"):
        d = prolongation_mismatch(g)
        print(f"  {g.tag}: {'ok' if is_identically_zero(d) else 'mismatch ' + to_prefix(d)}")


def pairs(k):
    sys = sho_system(k)
    for variant in ("printed", "prolonged"):
        pc = multiplier.enumerate_pairs(sys, symmetry_catalog(k, variant))
        bad = [(e.i, e.j) for e in pc.entries if e.status == "nonzero" and not e.satisfies_multiplier_pde]
        print(f"{variant}: zero={pc.zero_count} distinct_basic={pc.distinct_basic} non-multipliers={bad}")


def dilation():
    op, basis = quantize.printed_operators()["sho"], pdesolve.standard_solutions()
    for variant in ("printed", "corrected"):
        g = pdesolve.standard_generators(variant)["G1-"]
        rep = pdesolve.verify_symmetry(op, g, basis)
        worst = max(r["max_residual"] for r in rep["results"])
        print(f"G1- {variant}: d/du coefficient {to_prefix(g.coefficient('u'))} residual {worst:.2e}")


def exponents():
    for tag in ("goldstein-normal", "goldstein-weyl", "goldstein-split"):
        rep = pdesolve.nonphysical_check(tag)
        line = f"{tag}: extracted {rep['extracted_exponents']}"
        if "printed_residual" in rep:
            line += f" printed residual {rep['printed_residual']:.3f} corrected {rep['corrected_residual']:.1e}"
        print(line + f" physical={rep['physical']}")


if __name__ == "__main__":
    generators(1.0)
    pairs(1.0)
    dilation()
    exponents()
