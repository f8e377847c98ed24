"""Multi-group Bayesian games solved through their ex-ante agent game."""

from mbgame.equilibrium import EquilibriumReport, argmax_profiles, mbne_oracle, ne_oracle, solve_mbne
from mbgame.meag import MeagGame, StrategyProfile, build_meag, gamma, gamma_inverse
from mbgame.model import GroupTypeIndex, Layout, MbgSpec, SizeCaps, validate
from mbgame.potential import PotentialSolution, PotentialSystem, build_system, solve, verify_potential

__all__ = [
    "EquilibriumReport",
    "GroupTypeIndex",
    "Layout",
    "MbgSpec",
    "MeagGame",
    "PotentialSolution",
    "PotentialSystem",
    "SizeCaps",
    "StrategyProfile",
    "argmax_profiles",
    "build_meag",
    "build_system",
    "gamma",
    "gamma_inverse",
    "mbne_oracle",
    "ne_oracle",
    "solve",
    "solve_mbne",
    "validate",
    "verify_potential",
]
