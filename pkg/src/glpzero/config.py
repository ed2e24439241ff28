from __future__ import annotations

import os
from dataclasses import dataclass

from .hyper import DEFAULT_MAX_NORMSET, hyperexp
from .ordinal import OMEGA, ONE, Ordinal

# Cap on the per-step norm budget q.  The exact budget grows like
# |sig|^p (see kripke.exact_budget) so only shallow formulas get it;
# anything above the cap is "bounded".  6 covers depth 2 over two indices.
DEFAULT_NORM_BUDGET = 6
DEFAULT_MAX_CANDIDATES = 200_000


@dataclass(frozen=True)
class ModelConfig:
    """Depth ``theta`` and length ``lam`` of the model plus search caps."""

    theta: Ordinal
    lam: Ordinal = OMEGA
    norm_budget: int | None = DEFAULT_NORM_BUDGET
    max_norm_set: int = DEFAULT_MAX_NORMSET
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    tie_break: str = "notation-order"
    # multiplier on the exact budget; > 1 only to test that larger budgets
    # change nothing
    budget_scale: int = 1

    def __post_init__(self):
        if self.norm_budget is not None and self.norm_budget < 0:
            raise ValueError("norm_budget must be >= 0")
        if self.max_norm_set <= 0 or self.max_candidates <= 0 or self.budget_scale <= 0:
            raise ValueError("caps must be positive")
        if self.tie_break != "notation-order":
            raise ValueError(f"unknown tie-break rule {self.tie_break!r}")

    @classmethod
    def default(cls, lam: Ordinal = OMEGA, theta: Ordinal | None = None, **kw) -> "ModelConfig":
        """Config at the completeness threshold ``theta = e^lam 1`` unless
        *theta* is given.  ``GLP_MAX_NORMSET`` overrides the norm-set cap."""
        if theta is None:
            theta = hyperexp(lam, ONE)
        if "max_norm_set" not in kw and "GLP_MAX_NORMSET" in os.environ:
            kw["max_norm_set"] = int(os.environ["GLP_MAX_NORMSET"])
        return cls(theta=theta, lam=lam, **kw)

    def budget(self, exact: int) -> int:
        q = exact * self.budget_scale
        if self.norm_budget is None:
            return q
        return min(q, self.norm_budget)

    @property
    def threshold(self) -> Ordinal:
        return hyperexp(self.lam, ONE)

    def meets_threshold(self) -> bool:
        return self.theta >= self.threshold
