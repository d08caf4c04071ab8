"""Experiment harness and command line interface.

Subcommands:
    run    simulate one configuration and print its metrics
    sweep  run a parameter sweep (preset, config file, or ad-hoc flags) and
           write CSV tables or SVG charts
    ne     print the equilibrium baseline for one configuration and seed

A sweep varies one of {lambda, M, N, capacity_ratio} over a value list,
replicates each point R times per requested agent mode, attaches the
per-run equilibrium baselines, and emits one row per (value, mode).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from .agents import MODES
from .equilibrium import cost_advantages, ne_costs
from .network import NetworkConfig, assign_destinations, build_network
from .sim import SimConfig, config_with, replicate, run, write_trace_csv

__all__ = [
    "SweepSpec",
    "SweepRow",
    "SWEEP_VARIABLES",
    "run_sweep",
    "optimal_lambda",
    "emit_outputs",
    "read_rows",
    "preset_specs",
    "PRESETS",
    "main",
]

SWEEP_VARIABLES = ("lambda", "M", "N", "capacity_ratio")
CSV_HEADER = [
    "value",
    "mode",
    "avg_cost",
    "congestion_ratio",
    "avg_hub_users",
    "std_hub_users",
    "n_p",
    "ne_best",
    "ne_worst",
]
METRIC_COLUMNS = CSV_HEADER[2:7]


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a base configuration, the variable to vary, and its values.

    modes lists the agent populations to run at every point; it defaults to
    the base configuration's mode. replications is the run count per
    (value, mode) point. With ne_baseline on, each point also reports the
    equilibrium averages of its runs' OD draws.
    """

    base: SimConfig = SimConfig()
    sweep_variable: str = "lambda"
    values: tuple = ()
    replications: int = 1000
    ne_baseline: bool = True
    modes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"sweep_variable must be one of {SWEEP_VARIABLES}, "
                f"got {self.sweep_variable!r}"
            )
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("values must be a non-empty list")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications!r}")
        modes = tuple(self.modes) or (self.base.mode,)
        for mode in modes:
            if mode not in MODES:
                raise ValueError(f"modes must draw from {MODES}, got {mode!r}")
        object.__setattr__(self, "modes", modes)
        for value in self.values:
            config_at(self, value)  # raises on an invalid point


@dataclass(frozen=True)
class SweepRow:
    """Across-run means at one sweep point for one agent mode."""

    value: int | float
    mode: str
    avg_cost: float
    congestion_ratio: float
    avg_hub_users: float
    std_hub_users: float
    n_p: float
    ne_best: float | None
    ne_worst: float | None


def config_at(spec: SweepSpec, value) -> SimConfig:
    """The base configuration with the sweep variable set to value.

    An N sweep rescales the hub capacity to keep the base L/N ratio; a
    capacity_ratio sweep sets L = round(ratio * N).
    """
    base = spec.base
    var = spec.sweep_variable
    try:
        if var == "lambda":
            return config_with(base, hub_links=int(value))
        if var == "M":
            return config_with(base, M=int(value))
        if var == "N":
            n = int(value)
            ratio = Fraction(base.network.L, base.network.N)
            return config_with(
                base,
                N=n,
                L=max(1, round(ratio * n)),
                hub_links=min(base.network.hub_links, n),
            )
        return config_with(
            base, L=max(1, round(Fraction(value) * base.network.N))
        )
    except ValueError as exc:
        raise ValueError(f"values: {value!r} is invalid for {var} sweep: {exc}") from exc


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Replicate every (value, mode) point and return one row per point.

    All points share the spec's base seed, so modes at the same value see
    identical OD draws and the whole table is reproducible byte for byte.
    """
    rows: list[SweepRow] = []
    for value in spec.values:
        point = config_at(spec, value)
        for mode in spec.modes:
            result = replicate(replace(point, mode=mode), spec.replications)
            mean = result.mean
            rows.append(
                SweepRow(
                    value=value,
                    mode=mode,
                    avg_cost=mean.avg_cost,
                    congestion_ratio=mean.congestion_ratio,
                    avg_hub_users=mean.avg_hub_users,
                    std_hub_users=mean.std_hub_users,
                    n_p=mean.n_p,
                    ne_best=result.ne_best if spec.ne_baseline else None,
                    ne_worst=result.ne_worst if spec.ne_baseline else None,
                )
            )
    return rows


def optimal_lambda(
    spec: SweepSpec, lambda_values: tuple[int, ...] | None = None
) -> list[tuple[float, int]]:
    """Hub-link count minimizing mean cost, per capacity ratio.

    spec must be a capacity_ratio sweep; each ratio expands into a full
    lambda sweep (2..N unless lambda_values narrows it). Ties go to the
    smaller lambda. Returns (ratio, best lambda) pairs.
    """
    if spec.sweep_variable != "capacity_ratio":
        raise ValueError(
            f"sweep_variable: optimal_lambda needs a capacity_ratio sweep, "
            f"got {spec.sweep_variable!r}"
        )
    grid = tuple(lambda_values) if lambda_values else tuple(range(2, spec.base.network.N + 1))
    table: list[tuple[float, int]] = []
    for ratio in spec.values:
        base = config_at(spec, ratio)
        sub = SweepSpec(
            base=base,
            sweep_variable="lambda",
            values=grid,
            replications=spec.replications,
            ne_baseline=False,
            modes=(base.mode,),
        )
        rows = run_sweep(sub)
        best = min(rows, key=lambda row: (row.avg_cost, row.value))
        table.append((float(ratio), int(best.value)))
    return table


# ---------------------------------------------------------------- output --


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_outputs(rows: list[SweepRow], format: str, out_dir, basename: str = "results") -> list[Path]:
    """Write sweep rows as a CSV table or as one SVG chart per metric.

    Returns the created paths. Refuses empty input before touching disk.
    """
    if not rows:
        raise ValueError("rows is empty; nothing to emit")
    if format not in ("csv", "svg"):
        raise ValueError(f"format must be 'csv' or 'svg', got {format!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths: list[Path] = []
    if format == "csv":
        path = out_dir / f"{basename}.csv"
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for row in rows:
                writer.writerow(
                    [
                        _format_cell(row.value),
                        row.mode,
                        *(_format_cell(getattr(row, col)) for col in CSV_HEADER[2:]),
                    ]
                )
        paths.append(path)
        return paths
    for metric in METRIC_COLUMNS:
        path = out_dir / f"{basename}-{metric}.svg"
        path.write_text(_chart_svg(rows, metric), encoding="utf-8")
        paths.append(path)
    return paths


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def read_rows(path) -> list[SweepRow]:
    """Parse a CSV file produced by emit_outputs back into SweepRows."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected header: {header!r}")
        rows = []
        for raw in reader:
            rows.append(
                SweepRow(
                    value=_parse_value(raw[0]),
                    mode=raw[1],
                    avg_cost=float(raw[2]),
                    congestion_ratio=float(raw[3]),
                    avg_hub_users=float(raw[4]),
                    std_hub_users=float(raw[5]),
                    n_p=float(raw[6]),
                    ne_best=float(raw[7]) if raw[7] else None,
                    ne_worst=float(raw[8]) if raw[8] else None,
                )
            )
    return rows


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _chart_svg(rows: list[SweepRow], metric: str) -> str:
    """A small deterministic line chart: one series per mode, NE references
    dashed on the cost chart."""
    modes: list[str] = []
    for row in rows:
        if row.mode not in modes:
            modes.append(row.mode)
    series: list[tuple[str, list[float], list[float], bool]] = []
    for mode in modes:
        pts = [(float(r.value), float(getattr(r, metric))) for r in rows if r.mode == mode]
        xs, ys = zip(*pts)
        series.append((mode, list(xs), list(ys), False))
    if metric == "avg_cost":
        for name in ("ne_best", "ne_worst"):
            pts = [
                (float(r.value), float(getattr(r, name)))
                for r in rows
                if r.mode == modes[0] and getattr(r, name) is not None
            ]
            if pts:
                xs, ys = zip(*pts)
                series.append((name, list(xs), list(ys), True))

    width, height = 640, 400
    mleft, mright, mtop, mbottom = 60, 20, 36, 44
    all_x = [x for _, xs, _, _ in series for x in xs]
    all_y = [y for _, _, ys, _ in series for y in ys]
    x0, x1 = min(all_x), max(all_x)
    y0, y1 = min(all_y), max(all_y)
    if x0 == x1:
        x0, x1 = x0 - 1.0, x1 + 1.0
    if y0 == y1:
        y0, y1 = y0 - 1.0, y1 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    inner_w = width - mleft - mright
    inner_h = height - mtop - mbottom

    def px(x: float) -> float:
        return mleft + (x - x0) / (x1 - x0) * inner_w

    def py(y: float) -> float:
        return mtop + (y1 - y) / (y1 - y0) * inner_h

    def ticks(a: float, b: float, count: int = 5) -> list[float]:
        return [a + (b - a) * i / (count - 1) for i in range(count)]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="14">{metric}</text>',
        f'<line x1="{mleft}" y1="{mtop}" x2="{mleft}" y2="{height - mbottom}" stroke="black"/>',
        f'<line x1="{mleft}" y1="{height - mbottom}" x2="{width - mright}" '
        f'y2="{height - mbottom}" stroke="black"/>',
    ]
    for tx in ticks(x0, x1):
        parts.append(
            f'<line x1="{px(tx):.1f}" y1="{height - mbottom}" x2="{px(tx):.1f}" '
            f'y2="{height - mbottom + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px(tx):.1f}" y="{height - mbottom + 18}" '
            f'text-anchor="middle">{tx:g}</text>'
        )
    for ty in ticks(y0, y1):
        parts.append(
            f'<line x1="{mleft - 4}" y1="{py(ty):.1f}" x2="{mleft}" '
            f'y2="{py(ty):.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{mleft - 8}" y="{py(ty) + 4:.1f}" text-anchor="end">{ty:.4g}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.1f}" y="{height - 8}" text-anchor="middle">sweep value</text>'
    )
    for k, (label, xs, ys, dashed) in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        dash = ' stroke-dasharray="6 3"' if dashed else ""
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>'
        )
        ly = mtop + 14 + 16 * k
        lx = width - mright - 150
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="1.5"{dash}/>'
        )
        parts.append(f'<text x="{lx + 28}" y="{ly}">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --------------------------------------------------------------- presets --


def preset_specs(name: str, fast: bool = False) -> list[tuple[str, SweepSpec]]:
    """Named experiment presets as (output basename, spec) pairs.

    fast drops replications to 50 for smoke runs.
    """
    reps = 50 if fast else 1000
    base = SimConfig()
    if name == "baseline-homogeneous":
        return [
            (
                name,
                SweepSpec(
                    base=base,
                    sweep_variable="lambda",
                    values=tuple(range(2, 101)),
                    replications=reps,
                    modes=("homogeneous", "random"),
                ),
            )
        ]
    if name == "heterogeneous":
        return [
            (
                name,
                SweepSpec(
                    base=replace(base, M=8, mode="heterogeneous"),
                    sweep_variable="lambda",
                    values=tuple(range(2, 101)),
                    replications=reps,
                    modes=("heterogeneous", "random"),
                ),
            )
        ]
    if name == "multi-scale":
        specs = []
        for n in (20, 40, 60, 80):
            cfg = config_with(base, N=n, L=round(0.8 * n), hub_links=2)
            specs.append(
                (
                    f"{name}-n{n}",
                    SweepSpec(
                        base=cfg,
                        sweep_variable="lambda",
                        values=tuple(range(2, n + 1)),
                        replications=reps,
                    ),
                )
            )
        return specs
    if name == "optimal-lambda":
        return [
            (
                name,
                SweepSpec(
                    base=base,
                    sweep_variable="capacity_ratio",
                    values=(0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
                    replications=reps,
                    ne_baseline=False,
                ),
            )
        ]
    raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")


PRESETS = ("baseline-homogeneous", "heterogeneous", "multi-scale", "optimal-lambda")


# ------------------------------------------------------------------- cli --


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _base_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    net = common.add_argument_group("network")
    net.add_argument("--nodes", type=int, default=100, metavar="N", help="ring size (default 100)")
    net.add_argument("--hub-links", type=int, default=4, metavar="LAM", help="interchange count (default 4)")
    net.add_argument("--capacity", type=int, default=80, metavar="L", help="hub capacity (default 80)")
    net.add_argument("--alpha", type=_fraction, default=Fraction(1, 2), help="uncongested hub price (default 1/2)")
    net.add_argument("--beta", type=_fraction, default=Fraction(3, 2), help="congested hub price (default 3/2)")
    agents = common.add_argument_group("agents")
    agents.add_argument("--memory", type=int, default=2, metavar="M", help="history bits (default 2)")
    agents.add_argument("--strategies", type=int, default=8, metavar="S", help="strategies per agent (default 8)")
    agents.add_argument("--mode", choices=("homogeneous", "heterogeneous", "random"), default="homogeneous")
    agents.add_argument("--steps", type=int, default=1000, metavar="T", help="total steps (default 1000)")
    agents.add_argument("--warmup", type=int, default=500, help="steps excluded from metrics (default 500)")
    common.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    return common


def _config_from_args(args) -> SimConfig:
    return SimConfig(
        network=NetworkConfig(
            N=args.nodes,
            hub_links=args.hub_links,
            L=args.capacity,
            alpha=args.alpha,
            beta=args.beta,
        ),
        M=args.memory,
        S=args.strategies,
        mode=args.mode,
        T=args.steps,
        warmup=args.warmup,
        seed=args.seed if args.seed is not None else 0,
    )


def _spec_from_json(path: str, args) -> SweepSpec:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    net = doc.get("base", {}).get("network", {})
    base_kwargs = {k: v for k, v in doc.get("base", {}).items() if k != "network"}
    if "alpha" in net:
        net["alpha"] = Fraction(net["alpha"])
    if "beta" in net:
        net["beta"] = Fraction(net["beta"])
    base = SimConfig(network=NetworkConfig(**net), **base_kwargs)
    if args.seed is not None:
        base = replace(base, seed=args.seed)
    spec_kwargs = {
        k: doc[k]
        for k in ("sweep_variable", "values", "replications", "ne_baseline", "modes")
        if k in doc
    }
    spec = SweepSpec(base=base, **spec_kwargs)
    if args.reps is not None:
        spec = replace(spec, replications=args.reps)
    return spec


def _cmd_run(args) -> int:
    cfg = _config_from_args(args)
    reps = args.reps if args.reps is not None else 1
    if args.trace and reps != 1:
        print("error: --trace requires --reps 1", file=sys.stderr)
        return 2
    if reps == 1:
        if args.trace:
            metrics, records = run(cfg, trace=True)
            out = Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = write_trace_csv(records, out / "trace.csv")
            print(f"trace: {path}")
        else:
            metrics = run(cfg)
        for name in ("avg_cost", "congestion_ratio", "avg_hub_users", "std_hub_users", "n_p"):
            print(f"{name}={getattr(metrics, name)}")
        return 0
    result = replicate(cfg, reps)
    for name in ("avg_cost", "congestion_ratio", "avg_hub_users", "std_hub_users", "n_p"):
        print(f"{name}={getattr(result.mean, name)} (se {getattr(result.se, name):.4g})")
    print(f"ne_best={result.ne_best}")
    print(f"ne_worst={result.ne_worst}")
    return 0


def _cmd_sweep(args) -> int:
    try:
        if args.preset:
            named = preset_specs(args.preset, fast=args.fast)
            if args.reps is not None:
                named = [(n, replace(s, replications=args.reps)) for n, s in named]
            if args.seed is not None:
                named = [
                    (n, replace(s, base=replace(s.base, seed=args.seed))) for n, s in named
                ]
        elif args.config:
            named = [(Path(args.config).stem, _spec_from_json(args.config, args))]
        elif args.variable:
            if not args.values:
                print("error: --values is required with --variable", file=sys.stderr)
                return 2
            base = _config_from_args(args)
            values = tuple(_parse_value(v) for v in args.values.split(","))
            spec = SweepSpec(
                base=base,
                sweep_variable=args.variable,
                values=values,
                replications=args.reps if args.reps is not None else 1000,
                modes=tuple(args.modes.split(",")) if args.modes else (),
            )
            named = [("results", spec)]
        else:
            print("error: give --preset, --config, or --variable", file=sys.stderr)
            return 2

        paths: list[Path] = []
        for basename, spec in named:
            if args.preset == "optimal-lambda" and spec.sweep_variable == "capacity_ratio":
                table = optimal_lambda(spec)
                out = Path(args.out_dir)
                out.mkdir(parents=True, exist_ok=True)
                path = out / f"{basename}.csv"
                with path.open("w", newline="", encoding="utf-8") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(["capacity_ratio", "optimal_lambda"])
                    writer.writerows(table)
                paths.append(path)
                continue
            rows = run_sweep(spec)
            paths.extend(emit_outputs(rows, args.format, args.out_dir, basename=basename))
        for path in paths:
            print(path)
        return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _cmd_ne(args) -> int:
    cfg = _config_from_args(args)
    net = build_network(cfg.network)
    rng = np.random.default_rng(cfg.seed)
    od_pairs = assign_destinations(net, rng)
    advantages, outside, inside = cost_advantages(net, od_pairs)
    result = ne_costs(advantages, outside, inside, cfg.network.L)
    print(f"n_p={result.n_p}")
    print(f"c_best={result.c_best} ({float(result.c_best)})")
    print(f"c_worst={result.c_worst} ({float(result.c_worst)})")
    return 0


def main(argv: list[str] | None = None) -> int:
    common = _base_parser()
    parser = argparse.ArgumentParser(
        prog="ringhub",
        description="Minority-game route choice on ring-and-hub networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common], help="single configuration")
    p_run.add_argument("--reps", type=int, default=None, help="average this many runs")
    p_run.add_argument("--out-dir", default=".", help="directory for --trace output")
    p_run.add_argument("--trace", action="store_true", help="write the full step trace CSV")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", parents=[common], help="parameter sweep")
    p_sweep.add_argument("--preset", choices=PRESETS, help="named experiment preset")
    p_sweep.add_argument("--config", help="JSON sweep spec file")
    p_sweep.add_argument("--variable", choices=SWEEP_VARIABLES, help="ad-hoc sweep variable")
    p_sweep.add_argument("--values", help="comma-separated sweep values")
    p_sweep.add_argument("--modes", help="comma-separated agent modes")
    p_sweep.add_argument("--reps", type=int, default=None, help="replications per point")
    p_sweep.add_argument("--fast", action="store_true", help="smoke-test preset sizes (R=50)")
    p_sweep.add_argument("--out-dir", default=".", help="output directory")
    p_sweep.add_argument("--format", choices=("csv", "svg"), default="csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_ne = sub.add_parser("ne", parents=[common], help="equilibrium baseline")
    p_ne.set_defaults(func=_cmd_ne)

    args = parser.parse_args(argv)
    # run/ne paths treat the flag default as "not given"; sweep needs None
    if not hasattr(args, "reps"):
        args.reps = None
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
