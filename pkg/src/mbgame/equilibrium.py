"""Equilibria of the agent game and of the original game.

``solve_mbne`` runs the potential pipeline: agent game, potential
equation, maximisers of the potential, then back through Γ⁻¹. The two
brute-force oracles are independent of it: ``ne_oracle`` checks every
unilateral deviation in the agent game and ``mbne_oracle`` checks every
per-type deviation directly on the original game's prior and payoffs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from mbgame.meag import MeagGame, StrategyProfile, build_meag, gamma, gamma_inverse, resolve_method
from mbgame.model import MbgSpec, SizeCapExceeded, SizeCaps, check_caps
from mbgame.potential import build_system, normalized, solve, verify_potential
from mbgame.stp import lex_digits_table

ORACLE_CAP = 2**14
AUTO_ORACLE_CAP = 2**12


def _improves(values: np.ndarray, axis: int) -> np.ndarray:
    """True where some alternative along ``axis`` is strictly better (relative 1e-10)."""
    thr = 1e-10 * max(1.0, float(np.abs(values).max(initial=0.0)))
    return values < values.max(axis=axis, keepdims=True) - thr


def argmax_profiles(L_F, tie_tol: float = 1e-9) -> tuple[int, ...]:
    """All 1-based profiles within ``tie_tol·max(1, spread)`` of the potential's maximum."""
    L_F = np.asarray(L_F, dtype=float).reshape(-1)
    hi, lo = float(L_F.max()), float(L_F.min())
    keep = L_F >= hi - tie_tol * max(1.0, hi - lo)
    return tuple(int(a) + 1 for a in np.flatnonzero(keep))


def ne_oracle(meag: MeagGame, mode: str = "group", cap: int = ORACLE_CAP) -> tuple[int, ...]:
    """Pure Nash equilibria of the agent game by exhaustive deviation checks.

    Group mode uses the agents' equal-share payoffs; strong mode requires
    that no player of the agent's group gains from changing the agent's action.
    """
    if meag.htilde > cap:
        raise SizeCapExceeded(f"{meag.htilde} profiles exceed the oracle cap {cap}")
    radices = meag.layout.radices
    if mode == "group":
        rows = meag.L_agent
        axes = range(len(radices))
    elif mode == "strong":
        rows = meag.L_player
        axes = [meag.layout.agent_position(l, k) for l, k, _ in meag.player_labels]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ok = np.ones(radices, dtype=bool)
    for row, ax in zip(rows, axes):
        ok &= ~_improves(row.reshape(radices), ax)
    return tuple(int(a) + 1 for a in np.flatnonzero(ok.reshape(-1)))


def mbne_oracle(spec: MbgSpec, mode: str = "group", cap: int = ORACLE_CAP) -> list[StrategyProfile]:
    """(Strongly) Bayesian equilibria by enumerating every strategy profile.

    For each group ``l``, type ``k`` and candidate joint action, the
    belief-weighted payoff uses joint weights ``p(T_-l, T_lk)`` (same argmax
    as the conditional belief). Types with zero marginal impose nothing.
    """
    layout = spec.layout
    if layout.htilde > cap:
        raise SizeCapExceeded(f"{layout.htilde} strategy profiles exceed the oracle cap {cap}")
    e_l, g_l = layout.types_per_group, layout.actions_per_group
    r = spec.r
    n_a = layout.n_action_profiles
    strat = lex_digits_table(layout.radices) - 1  # (h̃, agents)
    offsets = np.cumsum((0,) + e_l[:-1])
    strides = [math.prod(g_l[j + 1 :]) for j in range(r)]
    types = lex_digits_table(e_l) - 1  # (ẽ, r)
    prior = spec.prior

    if mode == "group":
        utilities = {
            l: [spec.payoffs[list(i - 1 for i in spec.members(l))].mean(axis=0)]
            for l in range(1, r + 1)
        }
    elif mode == "strong":
        utilities = {l: [spec.payoffs[i - 1] for i in spec.members(l)] for l in range(1, r + 1)}
    else:
        raise ValueError(f"unknown mode {mode!r}")

    ok = np.ones(layout.htilde, dtype=bool)
    for l in range(1, r + 1):
        for k in range(e_l[l - 1]):
            sel = np.flatnonzero(types[:, l - 1] == k)
            w = prior[sel]
            if w.sum() <= 0.0:
                continue
            # action index contributed by the other groups, per (profile, type profile)
            base = np.zeros((layout.htilde, sel.size), dtype=np.int64)
            for j in range(r):
                if j == l - 1:
                    continue
                base += strat[:, offsets[j] + types[sel, j]] * strides[j]
            played = strat[:, offsets[l - 1] + k]
            cand = np.arange(g_l[l - 1]) * strides[l - 1]
            flat = sel[None, :, None] * n_a + base[:, :, None] + cand[None, None, :]
            for u in utilities[l]:
                vals = np.einsum("t,ntc->nc", w, u[flat])  # (h̃, g_l)
                bad = _improves(vals, axis=1)
                ok &= ~bad[np.arange(layout.htilde), played]
    return [gamma_inverse(int(a) + 1, layout) for a in np.flatnonzero(ok)]


@dataclass
class EquilibriumReport:
    mode: str
    potential_solvable: bool
    residual: float
    argmax_profiles: tuple[int, ...]
    argmax_strategies: list[StrategyProfile]
    L_F: np.ndarray | None = None  # raw min-norm potential, if solvable
    potential_max: float | None = None
    verify_violation: float | None = None
    oracle_ne_profiles: tuple[int, ...] | None = None
    mbne_strategies: list[StrategyProfile] | None = None
    correspondence_ok: bool | None = None
    soundness_ok: bool | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def normalized_potential(self) -> np.ndarray | None:
        return None if self.L_F is None else normalized(self.L_F)

    @property
    def non_maximal_equilibria(self) -> tuple[int, ...]:
        """Oracle equilibria that are not global maximisers of the potential."""
        if self.oracle_ne_profiles is None or not self.potential_solvable:
            return ()
        top = set(self.argmax_profiles)
        return tuple(a for a in self.oracle_ne_profiles if a not in top)


def solve_mbne(
    spec: MbgSpec,
    mode: str = "group",
    tol: float = 1e-8,
    tie_tol: float = 1e-9,
    oracle: str = "auto",
    method: str = "auto",
    caps: SizeCaps = SizeCaps(),
    oracle_cap: int = ORACLE_CAP,
) -> EquilibriumReport:
    """Find the (strongly) Bayesian equilibria through the agent game's potential.

    When the potential equation has no solution the report says so and the
    argmax fields stay empty; oracle results are filled in either way when
    ``oracle`` is ``"on"`` or (``"auto"`` and ``h̃ ≤ 2^12``).
    """
    if oracle not in ("on", "off", "auto"):
        raise ValueError(f"oracle must be on, off or auto, got {oracle!r}")
    check_caps(spec, caps)
    method = resolve_method(method, spec.layout)
    meag = build_meag(spec, method=method)
    sol = solve(build_system(meag, mode), tol=tol)
    layout = spec.layout

    rep = EquilibriumReport(
        mode=mode,
        potential_solvable=sol.solvable,
        residual=sol.residual,
        argmax_profiles=(),
        argmax_strategies=[],
        diagnostics={"tol": tol, "tie_tol": tie_tol, "method": method},
    )
    if sol.solvable:
        L_F = sol.L_F
        rep.L_F = L_F
        rep.argmax_profiles = argmax_profiles(L_F, tie_tol)
        rep.argmax_strategies = [gamma_inverse(a, layout) for a in rep.argmax_profiles]
        rep.potential_max = float(L_F.max())
        _, rep.verify_violation = verify_potential(meag, L_F, mode)

    if oracle == "on" or (oracle == "auto" and layout.htilde <= AUTO_ORACLE_CAP):
        # an explicit "on" overrides the enumeration cap
        cap = max(oracle_cap, layout.htilde) if oracle == "on" else oracle_cap
        ne = ne_oracle(meag, mode, cap=cap)
        mbne = mbne_oracle(spec, mode, cap=cap)
        rep.oracle_ne_profiles = ne
        rep.mbne_strategies = mbne
        rep.correspondence_ok = tuple(sorted(gamma(s, layout) for s in mbne)) == ne
        if sol.solvable:
            rep.soundness_ok = set(rep.argmax_profiles) <= set(ne)
        rep.diagnostics["discrepancy"] = list(rep.non_maximal_equilibria)
    return rep
