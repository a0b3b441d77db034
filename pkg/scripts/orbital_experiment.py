#!/usr/bin/env python3
"""Evolve a perturbed solitary wave and summarize the orbital diagnostics.

Example:
    python scripts/orbital_experiment.py --c 1.2 --rho 0.01 --shape noise --T 100
"""

import argparse
from pathlib import Path

from fwlab.evolve import PERTURBATION_SHAPES, SimConfig, run, write_trace_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", type=float, default=1.2)
    ap.add_argument("--rho", type=float, default=0.01)
    ap.add_argument("--shape", choices=PERTURBATION_SHAPES, default="gauss_even")
    ap.add_argument("--T", type=float, default=100.0)
    ap.add_argument("--dt", type=float, default=0.005)
    ap.add_argument("--n", type=int, default=4096)
    ap.add_argument("--seed", type=int, default=1234)
    ap.add_argument("--trace", type=Path, default=None, help="optional trace.csv path")
    args = ap.parse_args()

    config = SimConfig(c=args.c, rho=args.rho, shape=args.shape, T=args.T,
                       dt=args.dt, n=args.n, seed=args.seed)
    trace = run(config)

    d0 = trace.rows[0][1]
    if trace.blowup_t is not None:
        print(f"blow-up recorded at t = {trace.blowup_t}")
    finite = [r for r in trace.rows if r[1] == r[1]]
    sup = max(r[1] for r in finite)
    last = finite[-1]
    print(f"c={args.c} rho={args.rho} shape={args.shape}: "
          f"dist(0)={d0:.4e}, sup dist={sup:.4e} ({sup / max(d0, 1e-300):.2f} x), "
          f"final drift E={last[5]:.2e} Q={last[6]:.2e}")

    if args.trace:
        write_trace_csv(trace, args.trace)
        print(f"wrote {args.trace}")


if __name__ == "__main__":
    main()
