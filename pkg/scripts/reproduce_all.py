"""Run every CLI command and collect the JSON reports under results/."""

import argparse
import json
from pathlib import Path

from lastmult.cli import main

RUNS = {
    "multipliers_printed": ["multipliers", "--catalog", "printed"],
    "multipliers_prolonged": ["multipliers", "--catalog", "prolonged"],
    "lagrangians": ["lagrangians"],
    "hamiltonians": ["hamiltonians"],
    "quantize_normal": ["quantize", "--hamiltonian", "goldstein", "--scheme", "two-term-symmetric"],
    "quantize_weyl": ["quantize", "--hamiltonian", "goldstein", "--scheme", "weyl"],
    "quantize_split": ["quantize", "--hamiltonian", "goldstein", "--scheme", "split-symmetric"],
    "quantize_sho": ["quantize", "--hamiltonian", "sho", "--scheme", "two-term-symmetric"],
    "ladder_k1": ["ladder", "--n", "2"],
    "ladder_k2": ["ladder", "--n", "2", "--k", "2"],
    "symmetries_printed": ["verify-symmetries", "--variant", "printed"],
    "symmetries_corrected": ["verify-symmetries", "--variant", "corrected"],
    "spectrum": ["spectrum"],
}


def run(outdir: Path, seed: int) -> dict:
    outdir.mkdir(parents=True, exist_ok=True)
    codes = {}
    for name, argv in RUNS.items():
        path = outdir / f"{name}.json"
        codes[name] = main(argv + ["--seed", str(seed), "--out", str(path)])
    (outdir / "exit_codes.json").write_text(json.dumps(codes, indent=2, sort_keys=True) + "\n")
    return codes


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name, code in run(Path(args.out), args.seed).items():
        print(f"{code}  {name}")
