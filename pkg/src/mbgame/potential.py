"""(Strongly) potential equation of an agent game: assembly, solution, verification.

For each block ``b`` (an agent in group mode, an (agent, player) pair in
strong mode) the equation reads

    ξ_0 + Λ_bᵀ ξ_b = L_bᵀ

where ``L_b`` is the block's payoff structure row and ``Λ_b`` is the
Kronecker product of ``I_{g}`` over all agents except the block's own agent,
which contributes ``1_gᵀ``. The system is solvable iff the game is
(strongly) potential, and then ``ξ_0`` is a potential's structure vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft
import scipy.linalg

from mbgame.meag import MeagGame
from mbgame.model import Layout
from mbgame.stp import kron

MODES = ("group", "strong")


def build_lambda_block(radices, target: int) -> np.ndarray:
    """Dense ``Λ`` for the agent at 0-based position ``target``; shape ``(h̃/g_t) × h̃``."""
    factors = [np.ones((1, g)) if a == target else np.eye(g) for a, g in enumerate(radices)]
    return kron(*factors)


@dataclass(frozen=True, eq=False)
class PotentialSystem:
    """Block-structured linear system ``Λ ξ = rhs``.

    ``Λ`` is kept implicitly: block ``b`` is determined by the agent position
    ``block_agent[b]`` and the layout's radices. ``lambda_dense`` renders it.
    """

    mode: str
    layout: Layout
    block_labels: tuple[tuple[int, ...], ...]
    block_agent: tuple[int, ...]
    rhs_blocks: np.ndarray  # (B, h̃)

    @property
    def htilde(self) -> int:
        return self.layout.htilde

    @property
    def radices(self) -> tuple[int, ...]:
        return self.layout.radices

    def block_width(self, b: int) -> int:
        return self.htilde // self.radices[self.block_agent[b]]

    @property
    def shape(self) -> tuple[int, int]:
        B = len(self.block_agent)
        return self.htilde * B, self.htilde + sum(self.block_width(b) for b in range(B))

    @property
    def rhs(self) -> np.ndarray:
        return self.rhs_blocks.reshape(-1)

    def lambda_block(self, b: int) -> np.ndarray:
        return build_lambda_block(self.radices, self.block_agent[b])

    def lambda_dense(self) -> np.ndarray:
        n_rows, n_cols = self.shape
        h = self.htilde
        out = np.zeros((n_rows, n_cols))
        col = h
        for b in range(len(self.block_agent)):
            rows = slice(b * h, (b + 1) * h)
            out[rows, :h] = np.eye(h)
            w = self.block_width(b)
            out[rows, col : col + w] = self.lambda_block(b).T
            col += w
        return out

    # structured products with Λ_b and Λ_bᵀ, via the profile tensor

    def _sum_out(self, b: int, v: np.ndarray) -> np.ndarray:
        """``Λ_b v``: sum over the block agent's digit."""
        return v.reshape(self.radices).sum(axis=self.block_agent[b]).reshape(-1)

    def _spread(self, b: int, u: np.ndarray) -> np.ndarray:
        """``Λ_bᵀ u``: copy along the block agent's digit."""
        ax = self.block_agent[b]
        shape = list(self.radices)
        shape[ax] = 1
        return np.broadcast_to(u.reshape(shape), self.radices).reshape(-1)

    def apply(self, xi: np.ndarray) -> np.ndarray:
        """``Λ ξ`` without forming Λ."""
        h = self.htilde
        out = np.empty(self.shape[0])
        col = h
        for b in range(len(self.block_agent)):
            w = self.block_width(b)
            out[b * h : (b + 1) * h] = xi[:h] + self._spread(b, xi[col : col + w])
            col += w
        return out


def build_system(meag: MeagGame, mode: str = "group") -> PotentialSystem:
    """Stack one block per agent (group mode) or per (agent, player) pair (strong mode).

    The right-hand side of a block is its payoff structure row transposed,
    which is ``ψᵀ Pᵀ`` (resp. ``θᵀ Pᵀ``).
    """
    layout = meag.layout
    if mode == "group":
        labels = tuple((a.group, a.k) for a in layout.agents)
        agent = tuple(range(len(labels)))
        rhs = np.array(meag.L_agent)
    elif mode == "strong":
        labels = meag.player_labels
        agent = tuple(layout.agent_position(l, k) for l, k, _ in labels)
        rhs = np.array(meag.L_player)
    else:
        raise ValueError(f"mode must be one of {MODES}")
    if rhs.shape != (len(labels), layout.htilde):
        raise ValueError("payoff rows do not match the layout")
    return PotentialSystem(mode, layout, labels, agent, rhs)


@dataclass(frozen=True, eq=False)
class PotentialSolution:
    solvable: bool
    residual: float  # ‖Λξ − rhs‖₂ / max(1, ‖rhs‖₂)
    xi: np.ndarray  # min-norm least-squares solution
    htilde: int
    gauge_note: str = "potential is unique up to an additive constant"

    @property
    def L_F(self) -> np.ndarray | None:
        return self.xi[: self.htilde].copy() if self.solvable else None

    @property
    def xi0(self) -> np.ndarray:
        return self.xi[: self.htilde].copy()


class SolverError(RuntimeError):
    pass


def _relative_residual(system: PotentialSystem, xi: np.ndarray) -> float:
    r = system.apply(xi) - system.rhs
    return float(np.linalg.norm(r) / max(1.0, np.linalg.norm(system.rhs)))


def _solve_dense(system: PotentialSystem) -> np.ndarray:
    L = system.lambda_dense()
    # scipy's default cutoff (bare eps) can keep the gauge direction, whose
    # singular value is ~1e-16, and then the answer is not minimum-norm
    cond = max(L.shape) * np.finfo(float).eps
    xi, *_ = scipy.linalg.lstsq(L, system.rhs, cond=cond, lapack_driver="gelsd")
    return xi


def _solve_structured(system: PotentialSystem) -> np.ndarray:
    """Min-norm least squares without forming Λ.

    Each ``Λ_bᵀ / √g_b`` has orthonormal columns, so for fixed ``ξ_0`` the
    best ``ξ_b`` is ``Λ_b (y_b − ξ_0) / g_b`` and what remains is the normal
    system ``K ξ_0 = Σ_b (I − P_b) y_b`` with ``K = Σ_b (I − P_b)`` and ``P_b``
    the averaging projector along agent b's digit. These projectors act on
    different tensor axes and commute, so an orthonormal DCT along every axis
    (whose first basis vector is constant) diagonalises ``K``: the eigenvalue
    at frequency ``j`` is the number of blocks whose agent has ``j_a ≠ 0``.
    The only null direction left is the additive constant, fixed in closed
    form to minimise the norm of the whole solution.
    """
    radices = system.radices
    h = system.htilde
    y = system.rhs_blocks
    axes = system.block_agent

    rhs = np.zeros(radices)
    lam = np.zeros(radices)
    for b, ax in enumerate(axes):
        Y = y[b].reshape(radices)
        rhs += Y - Y.mean(axis=ax, keepdims=True)
        shape = [1] * len(radices)
        shape[ax] = radices[ax]
        lam += (np.arange(radices[ax]) != 0).reshape(shape)

    R = scipy.fft.dctn(rhs, type=2, norm="ortho")
    with np.errstate(divide="ignore", invalid="ignore"):
        X = np.where(lam > 0, R / np.where(lam > 0, lam, 1.0), 0.0)
    x0 = scipy.fft.idctn(X, type=2, norm="ortho").reshape(-1)

    u = [(y[b] - x0).reshape(radices).mean(axis=ax).reshape(-1) for b, ax in enumerate(axes)]
    # shifting ξ_0 by c and every ξ_b by −c leaves Λξ unchanged
    c = (sum(ub.sum() for ub in u) - x0.sum()) / (h + sum(ub.size for ub in u))
    return np.concatenate([x0 + c] + [ub - c for ub in u])


def solve(system: PotentialSystem, tol: float = 1e-8, method: str = "structured") -> PotentialSolution:
    """Minimum-norm least-squares solution and solvability verdict.

    ``method="dense"`` factorises the rendered Λ with an SVD-based solver;
    ``"structured"`` (default) uses the block structure and is much faster
    for large systems. Both return the same minimum-norm solution.
    """
    try:
        if method == "structured":
            xi = _solve_structured(system)
        elif method == "dense":
            xi = _solve_dense(system)
        else:
            raise ValueError(f"unknown method {method!r}")
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise SolverError(f"least-squares factorisation failed: {exc}") from exc
    if not np.all(np.isfinite(xi)):
        raise SolverError("least-squares solution is not finite")
    res = _relative_residual(system, xi)
    return PotentialSolution(res <= tol, res, xi, system.htilde)


def verify_potential(meag: MeagGame, L_F, mode: str = "group") -> tuple[bool, float]:
    """Check every unilateral deviation against the candidate potential.

    Returns ``(ok, max_violation)`` where the violation of a deviation pair
    is ``|Δpayoff − ΔF|``. ``ok`` uses the tolerance ``1e-8·max(1, |payoffs|)``.
    """
    system = build_system(meag, mode)
    L_F = np.asarray(L_F, dtype=float).reshape(-1)
    if L_F.shape != (meag.htilde,):
        raise ValueError(f"potential vector must have length {meag.htilde}")
    radices = meag.layout.radices
    worst = 0.0
    for b, ax in enumerate(system.block_agent):
        d = (system.rhs_blocks[b] - L_F).reshape(radices)
        worst = max(worst, float((d.max(axis=ax) - d.min(axis=ax)).max()))
    scale = max(1.0, float(np.abs(system.rhs_blocks).max(initial=0.0)))
    return worst <= 1e-8 * scale, worst


def normalized(L_F) -> np.ndarray:
    """Potential shifted so that its value at profile 1 is zero."""
    L_F = np.asarray(L_F, dtype=float)
    return L_F - L_F[0]
