"""Regenerate the data behind every signal/uncertainty/distribution figure.

Usage: python scripts/figure_data.py --outdir figure_data
"""

import argparse
import math
from pathlib import Path

import numpy as np

from parity_metrology import StateFamily, joint_distribution, sweep_signal, sweep_uncertainty
from parity_metrology.cli import render


def write(path: Path, columns, rows) -> None:
    path.write_text(render(columns, rows, "csv"), encoding="utf-8")
    print(f"wrote {path} ({len(rows)} rows)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="figure_data")
    parser.add_argument("--steps", type=int, default=401)
    args = parser.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    grid = np.linspace(0, 2 * math.pi, args.steps)
    for nbar in (5, 10, 20):
        table = sweep_signal(StateFamily("coherent", alpha=math.sqrt(nbar)), "j", grid)
        write(out / f"coherent_j_nbar{nbar}.csv", table.columns, table.rows)

    for n in (4, 30):
        table = sweep_signal(StateFamily("noon", n=n, phi_n=0.0), "parity_b", grid)
        write(out / f"noon_parity_n{n}.csv", table.columns, table.rows)

    half = np.linspace(0, math.pi, args.steps)
    for n in (2, 15):
        table = sweep_signal(StateFamily("twin_fock", n=n), "parity_b", half)
        write(out / f"twin_fock_parity_n{n}.csv", table.columns, table.rows)

    for phi in (0.0001, 0.05):
        table = sweep_uncertainty(phi, range(1, 21))
        write(out / f"twin_fock_uncertainty_phi{phi:g}.csv", table.columns, table.rows)

    for name in ("noon", "arcsine"):
        joint = joint_distribution(StateFamily(name, n=10, phi_n=0.0).input_state())
        rows = [(a, b, p) for (a, b), p in joint.probabilities.items()]
        write(out / f"joint_{name}_n10.csv", ("n_a", "n_b", "probability"), rows)


if __name__ == "__main__":
    main()
