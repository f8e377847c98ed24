"""Seeded sweep: brute-force equilibria of the original game vs the agent game.

Prints, per group layout, how many games were checked, how often the two
equilibrium sets agreed under the profile bijection, and the distribution of
equilibrium counts.

    python scripts/sweep_correspondence.py --n-games 600 --seed 0
"""

import argparse
import collections
import time

from mbgame.config import SweepConfig
from mbgame.equilibrium import mbne_oracle, ne_oracle
from mbgame.meag import build_meag, gamma


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-games", type=int, default=600)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--zero-prob", type=float, default=0.1)
    args = ap.parse_args()
    cfg = SweepConfig(n_games=args.n_games, seed=args.seed, zero_prob=args.zero_prob)

    agree = collections.Counter()
    total = collections.Counter()
    n_ne = collections.defaultdict(collections.Counter)
    t0 = time.perf_counter()
    for _, spec in cfg.games():
        meag = build_meag(spec, method="direct")
        for mode in ("group", "strong"):
            ne = ne_oracle(meag, mode)
            mapped = tuple(sorted(gamma(s, spec.layout) for s in mbne_oracle(spec, mode)))
            key = (spec.group_sizes, mode)
            total[key] += 1
            agree[key] += mapped == ne
            n_ne[key][len(ne)] += 1
    print(f"config: {cfg.as_dict()}")
    print(f"{'groups':<10} {'mode':<7} {'games':>5} {'agree':>5}  equilibrium counts")
    for key in sorted(total):
        counts = " ".join(f"{k}:{v}" for k, v in sorted(n_ne[key].items()))
        print(f"{str(key[0]):<10} {key[1]:<7} {total[key]:>5} {agree[key]:>5}  {counts}")
    print(f"{sum(agree.values())}/{sum(total.values())} agree, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
