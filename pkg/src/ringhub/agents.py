"""Inductive route-choice agents.

Each agent carries S lookup-table strategies over the last M hub states and
plays the one with the best virtual score. Scores are bookkept for every
strategy on every step, whether it was played or not, so an agent can switch
to a strategy that would have been doing well.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "Policy",
    "Strategy",
    "AgentMind",
    "generate_strategy",
    "draw_bias",
    "choose_action",
    "update_scores",
]

HOMOGENEOUS = "homogeneous"
HETEROGENEOUS = "heterogeneous"
RANDOM = "random"
MODES = (HOMOGENEOUS, HETEROGENEOUS, RANDOM)


class Policy(enum.Enum):
    """How an agent picks its action each step."""

    ADAPTIVE = "adaptive"  # best-scoring strategy, random tie-break
    RANDOM = "random"  # fair coin, ignores strategies and history


@dataclass
class Strategy:
    """A fixed action table over all P = 2^M history strings.

    table[mu] is the suggested action for history index mu: 0 keeps to the
    ring, 1 takes the hub. K is the bias the table was drawn with (each entry
    is 0 with probability K/P).
    """

    M: int
    K: int
    table: np.ndarray

    def __post_init__(self) -> None:
        self.table = np.asarray(self.table, dtype=np.int8)
        p = 1 << self.M
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if not 0 <= self.K <= p:
            raise ValueError(f"K must be in [0, {p}], got {self.K}")
        if self.table.shape != (p,):
            raise ValueError(f"table must have 2^M = {p} entries, got {self.table.shape}")
        if not np.isin(self.table, (0, 1)).all():
            raise ValueError("table entries must be 0 or 1")


@dataclass
class AgentMind:
    """An agent's strategies and their running virtual scores."""

    strategies: list[Strategy]
    scores: np.ndarray = field(default=None)  # type: ignore[assignment]
    policy: Policy = Policy.ADAPTIVE

    def __post_init__(self) -> None:
        if self.scores is None:
            self.scores = np.zeros(len(self.strategies), dtype=np.int64)
        self.scores = np.asarray(self.scores, dtype=np.int64)
        if self.policy is Policy.ADAPTIVE:
            if not self.strategies:
                raise ValueError("adaptive agents need at least one strategy")
            if len(self.scores) != len(self.strategies):
                raise ValueError("scores and strategies must have equal length")


def generate_strategy(M: int, K: int, rng: np.random.Generator) -> Strategy:
    """Draw a strategy table: each entry independently 0 with probability K/P.

    The draw takes one integer sample per entry from the default int64 path,
    entry e being 0 exactly when its sample lands below K.
    """
    p = 1 << M
    if not 0 <= K <= p:
        raise ValueError(f"K must be in [0, {p}], got {K}")
    draws = rng.integers(0, p, size=p)
    return Strategy(M=M, K=K, table=(draws >= K).astype(np.int8))


def draw_bias(mode: str, M: int, rng: np.random.Generator) -> int:
    """Bias parameter K for one strategy.

    Homogeneous agents all use K = P/2 (no randomness); heterogeneous agents
    draw K uniformly from the P+1 integers 0..P, independently per strategy.
    """
    p = 1 << M
    if mode == HOMOGENEOUS:
        return p // 2
    if mode == HETEROGENEOUS:
        return int(rng.integers(0, p + 1))
    raise ValueError(f"mode must be homogeneous or heterogeneous, got {mode!r}")


def choose_action(mind: AgentMind, mu: int, rng: np.random.Generator) -> int:
    """Action for the current history index mu.

    Adaptive policy: the suggestion of a best-scoring strategy, ties broken
    uniformly at random. The tie-break draws one uniform key per strategy
    every call (argmax of 2*score + key), so the random stream advances at a
    fixed rate regardless of whether a tie occurred. Random policy: one float
    draw, action 1 when it lands below 1/2.
    """
    if mind.policy is Policy.RANDOM:
        return int(rng.random() < 0.5)
    p = 1 << mind.strategies[0].M
    if not 0 <= mu < p:
        raise ValueError(f"mu must be in [0, {p}), got {mu}")
    keys = rng.random(len(mind.strategies))
    pick = int(np.argmax(2.0 * mind.scores + keys))
    return int(mind.strategies[pick].table[mu])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def update_scores(
    mind: AgentMind,
    mu: int,
    c_out: int | Fraction,
    c_in: int | Fraction,
) -> np.ndarray:
    """Credit every strategy for the step that just resolved.

    A strategy that suggested the cheaper route (inside when c_in < c_out,
    outside when c_in > c_out) gains one point; the opposite suggestion loses
    one; exact cost ties leave all scores unchanged. c_in must be priced at
    the realized hub state. Returns the updated score array.
    """
    s = _sign(c_out - c_in)
    if s != 0:
        for i, strat in enumerate(mind.strategies):
            mind.scores[i] += s * (2 * int(strat.table[mu]) - 1)
    return mind.scores
