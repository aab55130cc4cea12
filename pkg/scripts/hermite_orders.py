"""Weak dispersive ordering of the Hermite triples used as a plotting example.

Each panel holds X, Y, Z with X <wd Y <wd Z; the pmfs are printed as columns so
they can be plotted externally.
"""

import argparse

from discrete_dispersion import TailBudget, hermite, nu_r, weak_dispersive_compare

PANELS = {
    "left": [(0.10, 0.10), (0.10, 0.15), (0.15, 0.15)],
    "right": [(0.10, 1.0), (0.10, 1.1), (0.15, 1.1)],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tail-budget", type=float, default=1e-12)
    ap.add_argument("--kmax", type=int, default=8, help="pmf rows to print")
    args = ap.parse_args()
    budget = TailBudget(args.tail_budget)
    for panel, params in PANELS.items():
        ds = [hermite(a, b, budget) for a, b in params]
        print(f"{panel} panel: " + ", ".join(f"Herm({a}, {b})" for a, b in params))
        for (p1, d1), (p2, d2) in zip(zip(params, ds), zip(params[1:], ds[1:])):
            v = weak_dispersive_compare(d1, d2)
            flag = " (approximate)" if v.approximate else ""
            print(f"  Herm{p1} vs Herm{p2}: {v.relation.value}{flag}")
        print("  nu_1: " + "  ".join(f"{nu_r(d, 1):.4f}" for d in ds))
        print("  k    " + "  ".join(f"{'pmf':>8}" for _ in ds))
        for k in range(args.kmax + 1):
            row = [dict(zip(d.points, d.float_masses())).get(float(k), 0.0) for d in ds]
            print(f"  {k:<4} " + "  ".join(f"{v:8.5f}" for v in row))
        print()


if __name__ == "__main__":
    main()
