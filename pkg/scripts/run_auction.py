"""Solve the three-bidder first-price auction and print the equilibria.

    python scripts/run_auction.py [--mode group|strong]
"""

import argparse
import time

import numpy as np

from mbgame import gamefile
from mbgame.config import SolveConfig
from mbgame.fixtures import example4_spec

PRINTED_MAX = 6.855


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mode", choices=("group", "strong"), default="group")
    args = ap.parse_args()

    spec = example4_spec()
    t0 = time.perf_counter()
    rep = SolveConfig(mode=args.mode, oracle="on").run(spec)
    elapsed = time.perf_counter() - t0

    print(gamefile.report_text(gamefile.report_document(spec, rep)))
    print(f"wall time {elapsed:.2f}s")
    if rep.potential_solvable:
        F = rep.L_F
        print(f"min-norm potential: max {F.max():.4f}, min {F.min():.4f}, mean {F.mean():.4f}")
        print(f"printed value {PRINTED_MAX}: the potential is only fixed up to a constant,")
        print(f"so the shift that would reproduce it is {PRINTED_MAX - F.max():+.4f}")
        top = np.sort(F)[::-1][:8]
        print("largest values:", ", ".join(f"{v:.4f}" for v in top))


if __name__ == "__main__":
    main()
