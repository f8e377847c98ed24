"""Timing of the two least-squares routes and of the payoff construction.

The structured solver diagonalises the reduced normal equations with a DCT
along every agent axis; the dense route factorises Λ by SVD. Both return the
minimum-norm solution, so their outputs are compared too.

    python scripts/solver_scaling.py
"""

import time

import numpy as np

from mbgame.fixtures import random_spec
from mbgame.meag import build_meag
from mbgame.potential import build_system, solve

CASES = [((1, 1), 2), ((1, 1, 1), 2), ((2,), 2), ((1, 2), 2), ((2, 1), 3), ((1, 1, 1), 4)]
DENSE_LIMIT = 1024


def timed(fn, *a, **k):
    t0 = time.perf_counter()
    out = fn(*a, **k)
    return out, time.perf_counter() - t0


def main():
    print(f"{'groups':<10} {'g':>2} {'htilde':>7} {'stp build':>10} {'direct':>8} {'structured':>11} {'dense':>8} {'|Δξ|':>9}")
    for sizes, g in CASES:
        spec = random_spec(np.random.default_rng(0), sizes, g=g, kind="strong")
        h = spec.layout.htilde
        meag, t_direct = timed(build_meag, spec, method="direct")
        t_stp = timed(build_meag, spec, method="stp")[1] if h <= 4096 else float("nan")
        system = build_system(meag, "group")
        a, t_struct = timed(solve, system)
        if h <= DENSE_LIMIT:
            b, t_dense = timed(solve, system, method="dense")
            diff = float(np.abs(a.xi - b.xi).max())
        else:
            t_dense, diff = float("nan"), float("nan")
        print(
            f"{str(sizes):<10} {g:>2} {h:>7} {t_stp:>10.3f} {t_direct:>8.3f} {t_struct:>11.4f} {t_dense:>8.3f} {diff:>9.1e}"
        )


if __name__ == "__main__":
    main()
