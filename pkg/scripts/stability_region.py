#!/usr/bin/env python3
"""Map the stability index across the admissible speed window.

Prints a table of Q, d'' (closed form and finite difference) and the verdict
on a speed grid, then brackets the critical speed. Optionally writes the
sweep CSV next to the table.
"""

import argparse
from pathlib import Path

from fwlab import find_c0, sweep_d2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cmin", type=float, default=1.02)
    ap.add_argument("--cmax", type=float, default=1.333)
    ap.add_argument("--steps", type=int, default=25)
    ap.add_argument("--out", type=Path, default=None, help="optional CSV path")
    args = ap.parse_args()

    cs = [args.cmin + i * (args.cmax - args.cmin) / (args.steps - 1)
          for i in range(args.steps)]
    rows = sweep_d2(cs, fd_step=1e-4)

    print(f"{'c':>10} {'Q':>14} {'d2_closed':>14} {'d2_fd':>14}  verdict")
    for r in rows:
        print(f"{r.c:>10.6f} {r.Q_closed:>14.8f} {r.d2_closed:>14.8f} "
              f"{r.d2_fd:>14.8f}  {r.verdict}")

    res = find_c0()
    print(f"\ncritical speed c0 = {res.c0:.9f} "
          f"(bracket [{res.bracket_lo:.9f}, {res.bracket_hi:.9f}], "
          f"{res.iterations} iterations)")

    if args.out:
        lines = ["c,Q_closed,d2_closed,d2_fd,verdict"]
        for r in rows:
            lines.append(f"{r.c!r},{r.Q_closed!r},{r.d2_closed!r},{r.d2_fd!r},{r.verdict}")
        args.out.write_text("\n".join(lines) + "\n")
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
