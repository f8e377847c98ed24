"""The multi-group ex-ante agent game (MEAG) of a multi-group Bayesian game.

Every pair (group l, joint type T_lk) becomes an agent whose action set is
the group's joint action set. Agent action profiles are indexed by
``alpha`` in ``[1, htilde]`` in lexicographic order over the agents
``(1,1), ..., (1,e_1), ..., (r,e_r)``.

Two routes produce the agents' payoff structure vectors:

* ``"stp"`` follows the matrix construction: decode the agent profile with
  selector matrices, assemble ``Φ(Â)``, then ``θ = Ξ ⋉ Φᵀ ⋉ (δ_m^i)ᵀ ⋉ ℂᵀ``
  and ``L = P ⋉ θ`` column by column.
* ``"direct"`` evaluates the belief-weighted sum over opposing type
  profiles with vectorised indexing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from mbgame.model import GroupTypeIndex, Layout, MbgSpec, check_caps
from mbgame.stp import (
    kron,
    lex_decode,
    lex_digits_table,
    lex_encode,
    logical_matrix,
    order_reduce_matrix,
    selector_matrix,
    stp,
    stp_chain,
)


@dataclass(frozen=True)
class StrategyProfile:
    """``actions[l-1][k-1]`` is the (1-based) joint action group ``l`` plays in type ``k``."""

    actions: tuple[tuple[int, ...], ...]

    def group_strategy(self, l: int) -> tuple[int, ...]:
        return self.actions[l - 1]


def gamma(s: StrategyProfile, layout: Layout) -> int:
    """Map a strategy profile to its agent action profile index."""
    if tuple(len(a) for a in s.actions) != layout.types_per_group:
        raise ValueError("strategy profile does not match the layout")
    digits = [a for acts in s.actions for a in acts]
    return lex_encode(digits, layout.radices)


def gamma_inverse(alpha: int, layout: Layout) -> StrategyProfile:
    digits = lex_decode(alpha, layout.radices)
    out, pos = [], 0
    for e_l in layout.types_per_group:
        out.append(tuple(digits[pos : pos + e_l]))
        pos += e_l
    return StrategyProfile(tuple(out))


def agent_payoff_direct(spec: MbgSpec, l: int, k: int, i: int, alpha: int) -> float:
    """Player ``i``'s payoff in agent ``(l, T_lk)`` at profile ``alpha``, by explicit summation.

    Sums ``p(T_-l, T_lk) · c_i(T_-l, T_lk; s(T_-l, T_lk))`` over the opposing
    groups' joint types, where ``s`` is the decoded strategy profile.
    """
    if i not in spec.members(l):
        raise ValueError(f"player {i} is not in group {l}")
    layout = spec.layout
    s = gamma_inverse(alpha, layout)
    e_l = layout.types_per_group
    n_a = layout.n_action_profiles
    total = 0.0
    others = [range(1, e_l[j] + 1) if j != l - 1 else (k,) for j in range(spec.r)]
    for T in itertools.product(*others):
        t = lex_encode(T, e_l)
        a = lex_encode([s.actions[j][T[j] - 1] for j in range(spec.r)], layout.actions_per_group)
        total += spec.prior[t - 1] * spec.payoffs[i - 1, (t - 1) * n_a + a - 1]
    return float(total)


# --- matrix (STP) route --------------------------------------------------


def _group_selector(layout: Layout, l: int) -> np.ndarray:
    """``M_[h̃_1l, h_l, h̃_lr]``: extracts group l's block of the agent profile."""
    h = [g**e for e, g in zip(layout.types_per_group, layout.actions_per_group)]
    return selector_matrix(math.prod(h[: l - 1]), h[l - 1], math.prod(h[l:]))


def _type_selector(layout: Layout, l: int, k: int) -> np.ndarray:
    """``M_[g_l^{k-1}, g_l, g_l^{e_l-k}]``: extracts type k's action from group l's block."""
    e_l, g_l = layout.types_per_group[l - 1], layout.actions_per_group[l - 1]
    return selector_matrix(g_l ** (k - 1), g_l, g_l ** (e_l - k))


def agent_selectors(layout: Layout) -> list[np.ndarray]:
    """For each group l, the stack ``[M_k M_l]_k`` of shape ``(e_l, g_l, htilde)``."""
    out = []
    for l in range(1, layout.r + 1):
        Ml = _group_selector(layout, l)
        out.append(
            np.stack([_type_selector(layout, l, k) @ Ml for k in range(1, layout.types_per_group[l - 1] + 1)])
        )
    return out


def e_matrix(alpha: int, l: int, layout: Layout, selectors: Sequence[np.ndarray] | None = None) -> np.ndarray:
    """``E(Â, l)``: the ``g_l × e_l`` logical matrix of group l's strategy at profile ``alpha``."""
    if not 1 <= alpha <= layout.htilde:
        raise ValueError(f"profile index {alpha} outside [1, {layout.htilde}]")
    if selectors is None:
        Ml = _group_selector(layout, l)
        delta = logical_matrix(layout.htilde, [alpha])
        cols = [
            _type_selector(layout, l, k) @ (Ml @ delta)
            for k in range(1, layout.types_per_group[l - 1] + 1)
        ]
        return np.hstack(cols)
    return selectors[l - 1][:, :, alpha - 1].T.copy()


def phi(alpha: int, layout: Layout, selectors: Sequence[np.ndarray] | None = None) -> np.ndarray:
    """``Φ(Â) = I_ẽ ⊗ [⊗_l E(Â,l)] ⋉ O_ẽ``, shape ``(ẽ·∏g_l) × ẽ``."""
    e_tilde = layout.n_type_profiles
    E = kron(*(e_matrix(alpha, l, layout, selectors) for l in range(1, layout.r + 1)))
    return stp(np.kron(np.eye(e_tilde), E), order_reduce_matrix(e_tilde))


def xi_matrix(l: int, k: int, layout: Layout) -> np.ndarray:
    """``Ξ(l,k) = I_{ẽ_1l} ⊗ δ_{e_l}^k (δ_{e_l}^k)ᵀ``."""
    e = layout.types_per_group
    d = logical_matrix(e[l - 1], [k])
    return np.kron(np.eye(math.prod(e[: l - 1])), d @ d.T)


def stacked_payoffs(spec: MbgSpec) -> np.ndarray:
    """``ℂ = [ℂ_1, ..., ℂ_m]`` as one row."""
    return spec.payoffs.reshape(1, -1)


def theta(spec: MbgSpec, l: int, k: int, i: int, alpha: int, selectors=None) -> np.ndarray:
    """Column ``θ(l,k,i,Â)`` with ``ĉ^i_(l,T_lk)(Â) = P θ``."""
    if i not in spec.members(l):
        raise ValueError(f"player {i} is not in group {l}")
    layout = spec.layout
    Phi = phi(alpha, layout, selectors)
    di = logical_matrix(spec.m, [i])
    return stp_chain(xi_matrix(l, k, layout), Phi.T, di.T, stacked_payoffs(spec).T)


def psi(spec: MbgSpec, l: int, k: int, alpha: int, selectors=None) -> np.ndarray:
    """Column ``ψ(l,k,Â)`` with ``Ĉ_(l,T_lk)(Â) = P ψ``."""
    layout = spec.layout
    Phi = phi(alpha, layout, selectors)
    members = list(spec.members(l))
    dsum = logical_matrix(spec.m, members).sum(axis=1, keepdims=True)
    col = stp_chain(xi_matrix(l, k, layout), Phi.T, dsum.T, stacked_payoffs(spec).T)
    return col / len(members)


# --- the agent game ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MeagGame:
    """Agent game in structure-vector form.

    ``L_player[b]`` is the payoff row of ``player_labels[b] = (l, k, i)`` and
    ``L_agent[a]`` the equal-share payoff row of ``layout.agents[a]``.
    """

    layout: Layout
    group_sizes: tuple[int, ...]
    player_labels: tuple[tuple[int, int, int], ...]
    L_player: np.ndarray
    L_agent: np.ndarray

    @property
    def agents(self) -> list[GroupTypeIndex]:
        return self.layout.agents

    @property
    def htilde(self) -> int:
        return self.layout.htilde

    def player_row(self, l: int, k: int, i: int) -> np.ndarray:
        return self.L_player[self.player_labels.index((l, k, i))]

    def agent_row(self, l: int, k: int) -> np.ndarray:
        return self.L_agent[self.layout.agent_position(l, k)]


def _player_labels(spec: MbgSpec) -> list[tuple[int, int, int]]:
    return [(a.group, a.k, i) for a in spec.layout.agents for i in spec.members(a.group)]


def _rows_stp(spec: MbgSpec) -> np.ndarray:
    layout = spec.layout
    sel = agent_selectors(layout)
    P = spec.prior.reshape(1, -1)
    C = stacked_payoffs(spec).T
    deltas = [logical_matrix(spec.m, [i]).T for i in range(1, spec.m + 1)]
    labels = _player_labels(spec)
    xis = {(l, k): xi_matrix(l, k, layout) for l, k, _ in labels}
    rows = np.empty((len(labels), layout.htilde))
    for alpha in range(1, layout.htilde + 1):
        PhiT = phi(alpha, layout, sel).T
        w = [stp_chain(PhiT, d, C) for d in deltas]
        for b, (l, k, i) in enumerate(labels):
            rows[b, alpha - 1] = (P @ stp(xis[l, k], w[i - 1]))[0, 0]
    return rows


def _rows_direct(spec: MbgSpec, chunk: int = 1 << 16) -> np.ndarray:
    layout = spec.layout
    e_l, g_l = layout.types_per_group, layout.actions_per_group
    T = lex_digits_table(e_l) - 1  # (ẽ, r)
    offsets = np.cumsum((0,) + e_l[:-1])
    strides = np.array([math.prod(g_l[j + 1 :]) for j in range(layout.r)])
    # agent column that decides group j's action under each type profile
    agent_col = T + offsets  # (ẽ, r)
    n_a = layout.n_action_profiles
    labels = _player_labels(spec)
    rows = np.empty((len(labels), layout.htilde))
    for start in range(0, layout.htilde, chunk):
        stop = min(start + chunk, layout.htilde)
        digits = np.stack(
            np.unravel_index(np.arange(start, stop), layout.radices), axis=1
        )  # (n, agents), 0-based
        act = np.zeros((T.shape[0], stop - start), dtype=np.int64)
        for j in range(layout.r):
            act += digits[:, agent_col[:, j]].T * strides[j]
        flat = np.arange(T.shape[0])[:, None] * n_a + act  # (ẽ, n)
        for b, (l, k, i) in enumerate(labels):
            w = spec.prior * (T[:, l - 1] == k - 1)
            rows[b, start:stop] = w @ spec.payoffs[i - 1][flat]
    return rows


STP_AUTO_LIMIT = 2**12


def resolve_method(method: str, layout: Layout) -> str:
    """``"auto"`` picks the matrix route up to ``h̃ = 2^12`` and the direct sum beyond."""
    if method == "auto":
        return "stp" if layout.htilde <= STP_AUTO_LIMIT else "direct"
    return method


def build_meag(spec: MbgSpec, method: str = "stp", caps=None) -> MeagGame:
    """Build the agent game's payoff structure vectors.

    ``method="stp"`` uses the matrix route, ``"direct"`` the vectorised
    summation, ``"auto"`` the former on small games. Agent rows are the
    equal-share averages of their players' rows.
    """
    if caps is not None:
        check_caps(spec, caps)
    method = resolve_method(method, spec.layout)
    if method == "stp":
        rows = _rows_stp(spec)
    elif method == "direct":
        rows = _rows_direct(spec)
    else:
        raise ValueError(f"unknown method {method!r}")
    labels = _player_labels(spec)
    layout = spec.layout
    agent_rows = np.zeros((len(layout.agents), layout.htilde))
    for b, (l, k, _) in enumerate(labels):
        agent_rows[layout.agent_position(l, k)] += rows[b]
    for a, agent in enumerate(layout.agents):
        agent_rows[a] /= spec.group_sizes[agent.group - 1]
    rows.flags.writeable = False
    agent_rows.flags.writeable = False
    return MeagGame(layout, spec.group_sizes, tuple(labels), rows, agent_rows)
