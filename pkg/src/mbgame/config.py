"""Run configurations for the pipeline and for seeded sweeps."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from mbgame.equilibrium import ORACLE_CAP, EquilibriumReport, solve_mbne
from mbgame.fixtures import random_spec
from mbgame.model import MbgSpec, SizeCaps


@dataclass(frozen=True)
class SolveConfig:
    mode: str = "group"
    tol: float = 1e-8
    tie_tol: float = 1e-9
    oracle: str = "auto"
    method: str = "auto"
    caps: SizeCaps = field(default_factory=SizeCaps)
    oracle_cap: int = ORACLE_CAP

    def run(self, spec: MbgSpec) -> EquilibriumReport:
        return solve_mbne(spec, **{k: getattr(self, k) for k in self.__dataclass_fields__})


@dataclass(frozen=True)
class SweepConfig:
    """A reproducible family of random games: game ``n`` uses seed ``seed + n``."""

    n_games: int = 200
    seed: int = 0
    shapes: tuple[tuple[int, ...], ...] = ((1,), (1, 1), (2,), (1, 1, 1), (1, 2), (2, 1))
    e: int = 2
    g: int = 2
    kind: str = "generic"
    zero_prob: float = 0.0

    def games(self):
        for n in range(self.n_games):
            rng = np.random.default_rng(self.seed + n)
            sizes = self.shapes[n % len(self.shapes)]
            yield n, random_spec(rng, sizes, e=self.e, g=self.g, kind=self.kind, zero_prob=self.zero_prob)

    def as_dict(self) -> dict:
        return asdict(self)
