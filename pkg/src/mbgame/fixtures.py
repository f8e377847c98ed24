"""Game generators: first-price auctions, the three-bidder example, seeded random games."""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from mbgame.model import MbgSpec, SpecError

TIE_RULES = ("error", "lowest-index", "no-winner")


class TieReachable(SpecError):
    """Two bidders can tie for the highest bid and no tie rule was chosen."""


def auction_payoffs(
    evaluations: Sequence[Sequence[float]],
    bids: Sequence[Sequence[float]],
    tie_rule: str = "error",
) -> np.ndarray:
    """First-price sealed-bid payoff rows, shape ``(m, (e*g)**m)``.

    The unique highest bidder ``i`` receives ``t_i - a_i``; everyone else
    receives 0.
    """
    if tie_rule not in TIE_RULES:
        raise ValueError(f"unknown tie rule {tie_rule!r}; expected one of {TIE_RULES}")
    m = len(evaluations)
    if m == 0 or len(bids) != m:
        raise SpecError("need one evaluation list and one bid list per player")
    e = len(evaluations[0])
    g = len(bids[0])
    if any(len(v) != e for v in evaluations) or any(len(b) != g for b in bids):
        raise SpecError("heterogeneous type/action counts are not supported")

    n_a = g**m
    out = np.zeros((m, e**m * n_a))
    for ai, a in enumerate(itertools.product(range(g), repeat=m)):
        bid = [bids[i][a[i]] for i in range(m)]
        top = max(bid)
        leaders = [i for i in range(m) if bid[i] == top]
        if len(leaders) > 1:
            if tie_rule == "error":
                shown = ", ".join(f"player {i + 1} bids {bid[i]}" for i in leaders)
                raise TieReachable(f"tie for highest bid: {shown}")
            if tie_rule == "no-winner":
                continue
        w = leaders[0]
        for ti, t in enumerate(itertools.product(range(e), repeat=m)):
            out[w, ti * n_a + ai] = evaluations[w][t[w]] - bid[w]
    return out


def auction_fixture(
    evaluations: Sequence[Sequence[float]],
    bids: Sequence[Sequence[float]],
    prior,
    group_sizes: Sequence[int],
    tie_rule: str = "error",
) -> MbgSpec:
    C = auction_payoffs(evaluations, bids, tie_rule)
    labels = {
        "types": [[_num(v) for v in vals] for vals in evaluations],
        "actions": [[_num(b) for b in bs] for bs in bids],
    }
    return MbgSpec(tuple(group_sizes), len(evaluations[0]), len(bids[0]), prior, C, labels)


EXAMPLE4 = {
    "evaluations": [[100, 110], [108, 93], [78, 95]],
    "bids": [[57, 68], [70, 90], [30, 80]],
    # 0.02 at position 6: the only reading under which the prior sums to one
    "prior": ["0.125", "0.05", "0.03", "0.125", "0.2", "0.02", "0.25", "0.2"],
    "groups": [1, 2],
}


def example4_spec() -> MbgSpec:
    """Three bidders, groups {1} and {2, 3}, first-price rule."""
    d = EXAMPLE4
    return auction_fixture(d["evaluations"], d["bids"], [float(p) for p in d["prior"]], d["groups"])


def random_prior(rng: np.random.Generator, n: int, zero_prob: float = 0.0) -> np.ndarray:
    """Coarse random prior: integer weights in [0, 9] normalised to one."""
    w = rng.integers(1, 10, size=n).astype(float)
    if zero_prob > 0:
        w[rng.random(n) < zero_prob] = 0.0
        if w.sum() == 0:
            w[rng.integers(n)] = 1.0
    return w / w.sum()


def random_spec(
    rng: np.random.Generator,
    group_sizes: Sequence[int],
    e: int = 2,
    g: int = 2,
    kind: str = "generic",
    zero_prob: float = 0.0,
    low: int = -10,
    high: int = 10,
) -> MbgSpec:
    """Random integer-payoff game.

    ``kind`` selects the payoff structure:

    * ``"generic"``: independent integer payoffs.
    * ``"strong"``: ``c_i = F + d_i`` with ``d_i`` ignoring the own group's
      actions, so ``F`` is a strong potential (and a group potential).
    * ``"potential"``: as ``"strong"`` plus own-action terms that cancel in
      each group's average, so only the group-level condition holds.
    """
    group_sizes = tuple(group_sizes)
    m = sum(group_sizes)
    prior = random_prior(rng, e**m, zero_prob)
    shape = (e,) * m + (g,) * m
    if kind == "generic":
        C = rng.integers(low, high + 1, size=(m,) + shape).astype(float)
        return MbgSpec(group_sizes, e, g, prior, C.reshape(m, -1))
    if kind not in ("strong", "potential"):
        raise ValueError(f"unknown kind {kind!r}")

    F = rng.integers(low, high + 1, size=shape).astype(float)
    C = np.empty((m,) + shape)
    start = 0
    for size in group_sizes:
        own_axes = [m + j for j in range(start, start + size)]
        for i in range(start, start + size):
            d = rng.integers(low, high + 1, size=shape).astype(float)
            # collapse the group's own action axes so d ignores them
            for ax in own_axes:
                d = np.repeat(np.take(d, [0], axis=ax), g, axis=ax)
            C[i] = F + d
        if kind == "potential" and size > 1:
            z = rng.integers(low, high + 1, size=(size,) + shape).astype(float)
            z -= z.mean(axis=0)
            C[start : start + size] += z
        start += size
    return MbgSpec(group_sizes, e, g, prior, C.reshape(m, -1))


def _num(x):
    x = float(x)
    return int(x) if x.is_integer() else x
