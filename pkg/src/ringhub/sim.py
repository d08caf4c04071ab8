"""Game loop driver: single runs, replication batches, metrics, traces.

A run is fully determined by its SimConfig: the seed fixes the OD
assignment, the strategy tables, the initial history, and every per-step
draw. Replications use seeds seed+0 .. seed+R-1 and average each metric.

The per-run draw order is part of the determinism contract and is frozen
as: destinations (one call), per-strategy bias draws (heterogeneous mode
only, agent-major), strategy tables (one call), M initial history bits
(first bit most significant), then per-step draws in step order (one
tie-break key per strategy for adaptive agents, one coin per agent for
random agents), agent-major within a step.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _engine
from .agents import MODES
from .network import NetworkConfig, build_network

__all__ = [
    "SimConfig",
    "StepRecord",
    "Metrics",
    "ReplicateResult",
    "run",
    "replicate",
    "write_trace_csv",
    "config_with",
]


@dataclass(frozen=True)
class SimConfig:
    """Everything one simulation run depends on."""

    network: NetworkConfig = NetworkConfig()
    M: int = 2
    S: int = 8
    mode: str = "homogeneous"
    T: int = 1000
    warmup: int = 500
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.M <= 12:
            raise ValueError(f"M must be in [1, 12], got {self.M!r}")
        if self.S < 1:
            raise ValueError(f"S must be >= 1, got {self.S!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T!r}")
        if not 0 <= self.warmup < self.T:
            raise ValueError(
                f"warmup must satisfy 0 <= warmup < T={self.T}, got {self.warmup!r}"
            )
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")


@dataclass(frozen=True)
class StepRecord:
    """One step of a trace: hub usage, hub state, and total realized cost."""

    t: int
    n_in: int
    h: int
    total_cost: Fraction


@dataclass(frozen=True)
class Metrics:
    """The five per-run summary measures over the measurement window."""

    avg_cost: float
    congestion_ratio: float
    avg_hub_users: float
    std_hub_users: float
    n_p: int | float


@dataclass(frozen=True)
class ReplicateResult:
    """Across-run mean and standard error of each metric, plus NE baselines.

    ne_best and ne_worst are the equilibrium averages of each run's own OD
    draw, averaged across runs.
    """

    mean: Metrics
    se: Metrics
    ne_best: float
    ne_worst: float
    replications: int


def _batch(cfg: SimConfig, seeds, collect_trace=False, collect_scores=False):
    net = build_network(cfg.network)
    return _engine.simulate_batch(
        net, cfg.M, cfg.S, cfg.mode, cfg.T, cfg.warmup, seeds,
        collect_trace=collect_trace, collect_scores=collect_scores,
    )


def run(cfg: SimConfig, trace: bool = False):
    """Execute one run.

    Returns Metrics, or (Metrics, list of StepRecord) when trace is true.
    Metrics cover steps warmup+1 .. T only; the trace has all T steps.
    """
    batch = _batch(cfg, [cfg.seed], collect_trace=trace)
    metrics = Metrics(
        avg_cost=float(batch.avg_cost[0]),
        congestion_ratio=float(batch.congestion_ratio[0]),
        avg_hub_users=float(batch.avg_hub_users[0]),
        std_hub_users=float(batch.std_hub_users[0]),
        n_p=int(batch.n_p[0]),
    )
    if not trace:
        return metrics
    records = [
        StepRecord(
            t=t + 1,
            n_in=int(batch.trace_n_in[0, t]),
            h=int(batch.trace_h[0, t]),
            total_cost=Fraction(int(batch.trace_cost[0, t]), batch.scale),
        )
        for t in range(cfg.T)
    ]
    return metrics, records


def replicate(cfg: SimConfig, R: int) -> ReplicateResult:
    """Mean and standard error of each metric over R independent runs.

    Run i uses seed cfg.seed + i. Runs execute as one vectorized batch;
    results are identical to executing them one at a time and are
    independent of batch order.
    """
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R!r}")
    seeds = cfg.seed + np.arange(R, dtype=np.int64)
    batch = _batch(cfg, seeds)

    def stats(arr):
        arr = np.asarray(arr, dtype=np.float64)
        mean = float(arr.mean())
        se = float(arr.std(ddof=1) / math.sqrt(R)) if R > 1 else 0.0
        return mean, se

    names = ["avg_cost", "congestion_ratio", "avg_hub_users", "std_hub_users", "n_p"]
    means, ses = {}, {}
    for name in names:
        means[name], ses[name] = stats(getattr(batch, name))
    return ReplicateResult(
        mean=Metrics(**means),
        se=Metrics(**ses),
        ne_best=float(batch.ne_best.mean()),
        ne_worst=float(batch.ne_worst.mean()),
        replications=R,
    )


def write_trace_csv(records: list[StepRecord], path) -> Path:
    """Write a trace as CSV rows (t, n_in, h, total_cost), LF line endings."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "n_in", "h", "total_cost"])
        for rec in records:
            writer.writerow([rec.t, rec.n_in, rec.h, repr(float(rec.total_cost))])
    return path


def config_with(cfg: SimConfig, **changes) -> SimConfig:
    """replace() that also reaches one level into the network config."""
    net_fields = {k: v for k, v in changes.items() if k in NetworkConfig.__dataclass_fields__}
    sim_fields = {k: v for k, v in changes.items() if k not in net_fields}
    if net_fields:
        sim_fields["network"] = replace(cfg.network, **net_fields)
    return replace(cfg, **sim_fields)
