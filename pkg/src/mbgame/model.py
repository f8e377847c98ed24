"""Multi-group Bayesian games: data model, validation, beliefs and payoffs.

Players are numbered 1..m and groups are contiguous blocks of players.
A type profile ``t`` is addressed by its 1-based lexicographic index over
the players' types (player 1 most significant); the same holds for action
profiles. Because groups are contiguous, the player-level lexicographic
index coincides with the group-level one over ``(T_1, ..., T_r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from mbgame.stp import lex_decode, lex_encode


class SpecError(ValueError):
    pass


class ZeroMarginal(SpecError):
    """The conditioning group-type has zero prior probability."""


class SizeCapExceeded(SpecError):
    pass


@dataclass(frozen=True)
class SizeCaps:
    max_type_profiles: int = 2**20
    max_agent_profiles: int = 2**20


@dataclass(frozen=True)
class GroupTypeIndex:
    """Agent ``(l, T_lk)``: group ``l`` (1-based) in its ``k``-th joint type."""

    group: int
    k: int

    def __iter__(self):
        return iter((self.group, self.k))


@dataclass(frozen=True)
class Layout:
    """Per-group type and action counts; everything the agent game's indexing needs."""

    types_per_group: tuple[int, ...]
    actions_per_group: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.types_per_group)

    @property
    def agents(self) -> list[GroupTypeIndex]:
        return [
            GroupTypeIndex(l, k)
            for l, e_l in enumerate(self.types_per_group, start=1)
            for k in range(1, e_l + 1)
        ]

    @property
    def radices(self) -> tuple[int, ...]:
        """Action count of every agent, in agent order."""
        return tuple(
            g_l for e_l, g_l in zip(self.types_per_group, self.actions_per_group) for _ in range(e_l)
        )

    @property
    def htilde(self) -> int:
        return math.prod(g**e for e, g in zip(self.types_per_group, self.actions_per_group))

    @property
    def n_type_profiles(self) -> int:
        return math.prod(self.types_per_group)

    @property
    def n_action_profiles(self) -> int:
        return math.prod(self.actions_per_group)

    def agent_position(self, l: int, k: int) -> int:
        """0-based position of agent (l, k) in the agent order."""
        if not 1 <= l <= self.r or not 1 <= k <= self.types_per_group[l - 1]:
            raise IndexError(f"no agent ({l}, {k})")
        return sum(self.types_per_group[: l - 1]) + k - 1


@dataclass(frozen=True, eq=False)
class MbgSpec:
    """A multi-group Bayesian game with uniform per-player type/action counts.

    ``prior`` has length ``e**m`` and ``payoffs`` has shape ``(m, (e*g)**m)``;
    row ``i-1`` of ``payoffs`` is player ``i``'s payoff structure vector over
    ``(t; a)`` with the type profile more significant.
    """

    group_sizes: tuple[int, ...]
    e: int
    g: int
    prior: np.ndarray
    payoffs: np.ndarray
    labels: dict | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "group_sizes", tuple(int(s) for s in self.group_sizes))
        prior = np.array(self.prior, dtype=float).reshape(-1)
        payoffs = np.array(self.payoffs, dtype=float)
        if payoffs.ndim == 1:
            payoffs = payoffs.reshape(1, -1)
        prior.flags.writeable = False
        payoffs.flags.writeable = False
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "payoffs", payoffs)

    @property
    def m(self) -> int:
        return sum(self.group_sizes)

    @property
    def r(self) -> int:
        return len(self.group_sizes)

    @property
    def layout(self) -> Layout:
        return Layout(
            tuple(self.e**s for s in self.group_sizes), tuple(self.g**s for s in self.group_sizes)
        )

    def members(self, l: int) -> range:
        """Players (1-based) of group ``l``."""
        if not 1 <= l <= self.r:
            raise IndexError(f"no group {l}")
        start = sum(self.group_sizes[: l - 1])
        return range(start + 1, start + self.group_sizes[l - 1] + 1)

    def group_of(self, i: int) -> int:
        for l in range(1, self.r + 1):
            if i in self.members(l):
                return l
        raise IndexError(f"no player {i}")

    def prior_tensor(self) -> np.ndarray:
        """Prior reshaped to one axis per group type, shape ``(e_1, ..., e_r)``."""
        return self.prior.reshape(self.layout.types_per_group)

    def payoff_matrix(self, i: int) -> np.ndarray:
        """Player ``i``'s payoffs as an (type profile × action profile) array."""
        return self.payoffs[i - 1].reshape(self.e**self.m, self.g**self.m)


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok


def validate(spec: MbgSpec, caps: SizeCaps = SizeCaps()) -> ValidationReport:
    rep = ValidationReport()
    if not spec.group_sizes or any(s < 1 for s in spec.group_sizes):
        rep.problems.append("group sizes must be positive")
        return rep
    if spec.e < 1 or spec.g < 1:
        rep.problems.append("type and action counts must be positive")
        return rep
    m = spec.m
    n_types = spec.e**m
    if n_types > caps.max_type_profiles:
        rep.problems.append(f"size cap: {n_types} type profiles > {caps.max_type_profiles}")
    htilde = spec.layout.htilde
    if htilde > caps.max_agent_profiles:
        rep.problems.append(f"size cap: {htilde} agent action profiles > {caps.max_agent_profiles}")

    if spec.prior.shape != (n_types,):
        rep.problems.append(f"prior shape: expected {n_types} entries, got {spec.prior.size}")
    elif not np.all(np.isfinite(spec.prior)):
        rep.problems.append("prior has non-finite entries")
    else:
        if np.any(spec.prior < 0):
            rep.problems.append("prior has negative entries")
        total = float(spec.prior.sum())
        if abs(total - 1.0) > 1e-12:
            rep.problems.append(f"prior not normalized (sums to {total:.12g})")

    width = (spec.e * spec.g) ** m
    if spec.payoffs.shape != (m, width):
        rep.problems.append(
            f"payoff shape: expected {m} rows of {width} entries, got {spec.payoffs.shape}"
        )
    elif not np.all(np.isfinite(spec.payoffs)):
        rep.problems.append("payoffs have non-finite entries")
    return rep


def check_caps(spec: MbgSpec, caps: SizeCaps = SizeCaps()) -> None:
    n_types = spec.e**spec.m
    htilde = spec.layout.htilde
    if n_types > caps.max_type_profiles or htilde > caps.max_agent_profiles:
        raise SizeCapExceeded(
            f"{n_types} type profiles / {htilde} agent action profiles exceed caps {caps}"
        )


def _check_gt(spec: MbgSpec, gt: GroupTypeIndex) -> tuple[int, int]:
    l, k = gt
    if not 1 <= l <= spec.r or not 1 <= k <= spec.e ** spec.group_sizes[l - 1]:
        raise IndexError(f"no group type {gt}")
    return l, k


def marginal(spec: MbgSpec, gt: GroupTypeIndex) -> float:
    """``p(T_lk) = Σ_{T_-l} p(T_-l, T_lk)``."""
    l, k = _check_gt(spec, gt)
    return float(np.take(spec.prior_tensor(), k - 1, axis=l - 1).sum())


def conditional(spec: MbgSpec, gt: GroupTypeIndex, other_types: int) -> float:
    """Belief ``p(T_-l | T_lk)``.

    ``other_types`` is the 1-based lexicographic index of ``T_-l`` over the
    remaining groups' joint types, in group order.
    """
    l, k = _check_gt(spec, gt)
    denom = marginal(spec, gt)
    if denom <= 0.0:
        raise ZeroMarginal(f"group type {gt} has zero marginal probability")
    e_l = spec.layout.types_per_group
    others = e_l[: l - 1] + e_l[l:]
    rest = list(lex_decode(other_types, others)) if others else []
    full = rest[: l - 1] + [k] + rest[l - 1 :]
    return float(spec.prior[lex_encode(full, e_l) - 1]) / denom


def payoff(spec: MbgSpec, i: int, t: int, a: int) -> float:
    """``c_i(t; a)`` with 1-based player and lexicographic profile indices."""
    n_t, n_a = spec.e**spec.m, spec.g**spec.m
    if not 1 <= i <= spec.m or not 1 <= t <= n_t or not 1 <= a <= n_a:
        raise IndexError(f"payoff index out of range: i={i}, t={t}, a={a}")
    return float(spec.payoffs[i - 1, (t - 1) * n_a + (a - 1)])


def group_payoff(spec: MbgSpec, l: int, t: int, a: int) -> float:
    """Equal-share group payoff ``C_l = Σ_{i∈G_l} c_i / m_l``."""
    members = spec.members(l)
    return sum(payoff(spec, i, t, a) for i in members) / len(members)


def permute_players(
    groups: Sequence[Sequence[int]], e: int, g: int, prior, payoffs
) -> tuple[tuple[int, ...], np.ndarray, np.ndarray, tuple[int, ...]]:
    """Relabel players so that each group becomes a contiguous block.

    ``groups`` lists the 1-based members of each group. Returns the group
    sizes, the permuted prior and payoffs, and ``order`` where new player
    ``j`` is old player ``order[j-1]``.
    """
    order = tuple(int(i) for grp in groups for i in grp)
    m = len(order)
    if sorted(order) != list(range(1, m + 1)):
        raise SpecError("groups must partition players 1..m")
    perm = [i - 1 for i in order]
    prior = np.asarray(prior, dtype=float).reshape((e,) * m).transpose(perm).reshape(-1)
    pay = np.asarray(payoffs, dtype=float).reshape((m,) + (e,) * m + (g,) * m)
    axes = [0] + [1 + p for p in perm] + [1 + m + p for p in perm]
    pay = pay[perm].transpose(axes).reshape(m, -1)
    return tuple(len(grp) for grp in groups), prior, pay, order
