"""Run specifications, run reports and benchmark sweeps.

A :class:`RunSpec` pins down everything a run depends on, so executing the
same spec twice yields byte-identical trace and report documents.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import mean
from typing import Iterable, Mapping, Sequence

from .cmcp import DEFAULT_VARIANT
from .cvc import compose_layers
from .engine import DaemonKind, Trace, rounds_to_reach, run
from .graph import Graph, bfs_distances, diameter, generate_random_connected
from .state import Configuration, NodeState, randomize_configuration, zeroed_configuration
from .verifiers import (
    CoverReport,
    PartitionReport,
    check_cmcp_solution,
    check_cvc_solution,
    is_legitimate_cmcp,
    is_legitimate_cvc,
)

REPORT_FORMAT_VERSION = 1


@dataclass(frozen=True)
class RunSpec:
    """Graph, scheduler, initial state and wiring of one run.

    ``initial`` wins over ``fault_seed``; with neither, every node starts
    from the zeroed state.
    """

    graph: Graph
    daemon: DaemonKind = field(default_factory=DaemonKind)
    fault_seed: int | None = 0
    initial: Mapping[int, NodeState] | None = None
    use_bfs: bool = True
    max_steps: int | None = None
    variant: str = DEFAULT_VARIANT
    oracle: bool = False

    def initial_configuration(self) -> Configuration:
        if self.initial is not None:
            return dict(self.initial)
        if self.fault_seed is None:
            return zeroed_configuration(self.graph)
        return randomize_configuration(self.graph, self.fault_seed)


def is_legitimate(c: Mapping[int, NodeState], g: Graph, dist: Mapping[int, int],
                  use_bfs: bool, variant: str = DEFAULT_VARIANT) -> bool:
    """Legitimacy of the whole composition: distances, cliques and cover flags."""
    if use_bfs and any(c[p].d_hat != dist[p] for p in g.nodes):
        return False
    return is_legitimate_cmcp(c, g, dist, variant) and is_legitimate_cvc(c, g)


@dataclass
class RunOutcome:
    spec: RunSpec
    trace: Trace
    partition: PartitionReport
    cover: CoverReport
    legitimate_step: int | None
    cmcp_legitimate_step: int | None

    @property
    def terminal(self) -> bool:
        return self.trace.terminal

    @property
    def ok(self) -> bool:
        return self.terminal and self.partition.ok and self.cover.ok

    @property
    def rounds_to_legitimacy(self) -> int | None:
        if self.legitimate_step is None:
            return None
        return rounds_to_reach(self.trace, self.legitimate_step)

    def report(self) -> dict:
        t = self.trace
        return {
            "format": "sscvc.report",
            "version": REPORT_FORMAT_VERSION,
            "run": {
                "daemon": {"variant": self.spec.daemon.variant, "seed": self.spec.daemon.seed},
                "fault_seed": self.spec.fault_seed,
                "program": t.program,
                "terminal": t.terminal,
                "steps": t.n_steps,
                "moves": t.moves,
                "cmcp_moves": t.layer_moves("CMCP"),
                "rounds": t.rounds,
                "legitimate_step": self.legitimate_step,
                "cmcp_legitimate_step": self.cmcp_legitimate_step,
                "rounds_to_legitimacy": self.rounds_to_legitimacy,
            },
            "partition": self.partition.to_dict(),
            "cover": self.cover.to_dict(),
            "ok": self.ok,
        }

    def dumps_report(self) -> str:
        return json.dumps(self.report(), indent=1, sort_keys=True) + "\n"


def execute(spec: RunSpec) -> RunOutcome:
    g = spec.graph
    dist = bfs_distances(g)
    program = compose_layers(spec.use_bfs, spec.variant)
    marks: dict[str, int | None] = {"all": None, "cmcp": None}

    def watch(i: int, c: Configuration) -> bool:
        if marks["cmcp"] is None and is_legitimate_cmcp(c, g, dist, spec.variant):
            if not spec.use_bfs or all(c[p].d_hat == dist[p] for p in g.nodes):
                marks["cmcp"] = i
        if marks["cmcp"] is not None and is_legitimate(c, g, dist, spec.use_bfs, spec.variant):
            marks["all"] = i
            return True
        return False

    res = run(
        g,
        spec.initial_configuration(),
        spec.daemon,
        max_steps=spec.max_steps,
        program=program,
        distances=None if spec.use_bfs else dist,
        observer=watch,
    )
    return RunOutcome(
        spec=spec,
        trace=res.trace,
        partition=check_cmcp_solution(res.final, g, dist),
        cover=check_cvc_solution(res.final, g, with_oracle=spec.oracle),
        legitimate_step=marks["all"],
        cmcp_legitimate_step=marks["cmcp"],
    )


# -- benchmark sweeps ----------------------------------------------------------------

BENCH_COLUMNS = ("n", "m", "Diam", "n_c", "moves", "cmcp_moves", "steps", "rounds", "ratio")


@dataclass(frozen=True)
class BenchConfig:
    n_min: int = 1
    n_max: int = 6
    graphs_per_n: int = 10
    daemons: tuple[str, ...] = ("distributed_random",)
    seeds: tuple[int, ...] = (0,)
    edge_p: float = 0.4
    use_bfs: bool = True
    oracle: bool = True
    variant: str = DEFAULT_VARIANT
    graph_seed: int = 0


def bench_specs(cfg: BenchConfig) -> list[tuple[tuple, RunSpec]]:
    """Every run of the sweep, keyed and ordered by (n, graph seed, daemon, run seed)."""
    out = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        for k in range(cfg.graphs_per_n):
            gseed = cfg.graph_seed + 1000 * n + k
            g = generate_random_connected(n, cfg.edge_p, gseed)
            for d in cfg.daemons:
                for s in cfg.seeds:
                    spec = RunSpec(
                        graph=g,
                        daemon=DaemonKind(d, s),
                        fault_seed=s,
                        use_bfs=cfg.use_bfs,
                        variant=cfg.variant,
                        oracle=cfg.oracle,
                    )
                    out.append(((n, gseed, d, s), spec))
    return out


def bench_row(spec: RunSpec) -> dict:
    o = execute(spec)
    g = spec.graph
    return {
        "n": g.n,
        "m": g.m,
        "Diam": diameter(g),
        "n_c": o.partition.n_c,
        "moves": o.trace.moves,
        "cmcp_moves": o.trace.layer_moves("CMCP"),
        "steps": o.trace.n_steps,
        "rounds": o.trace.rounds,
        "ratio": o.cover.ratio,
        "terminal": o.terminal,
        "ok": o.ok,
    }


def run_bench(cfg: BenchConfig, jobs: int = 1) -> list[dict]:
    keyed = bench_specs(cfg)
    specs = [s for _, s in keyed]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(bench_row, specs, chunksize=8))
    else:
        rows = [bench_row(s) for s in specs]
    for (key, _), row in zip(keyed, rows):
        row["graph_seed"], row["daemon"], row["run_seed"] = key[1], key[2], key[3]
    return rows


def summarize(rows: Sequence[Mapping]) -> dict:
    """Max and mean of every numeric column (ratio skips rows without an oracle)."""
    out: dict[str, dict[str, float | None]] = {}
    for col in BENCH_COLUMNS:
        vals = [r[col] for r in rows if r[col] is not None]
        out[col] = {
            "max": max(vals) if vals else None,
            "mean": round(mean(vals), 6) if vals else None,
        }
    return out


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.3f}"
    return str(v)


def format_table(rows: Iterable[Mapping]) -> str:
    rows = list(rows)
    cols = ("daemon", "run_seed") + BENCH_COLUMNS
    body = [[_fmt(r[c]) for c in cols] for r in rows]
    summary = summarize(rows)
    for stat in ("max", "mean"):
        body.append([stat, ""] + [_fmt(summary[c][stat]) for c in BENCH_COLUMNS])
    widths = [max(len(c), *(len(line[i]) for line in body)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in body]
    return "\n".join(lines) + "\n"
