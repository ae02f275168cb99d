"""Guarded-action execution: daemons, steps, runs, rounds, and traces.

A step has three phases: every node evaluates its guards against the
current configuration, the daemon picks a nonempty subset of the enabled
nodes, and each picked node applies its highest-priority enabled action.
Every statement is computed from the pre-step configuration and all writes
land together.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cvc import LocalProgram, compose_layers
from .graph import Graph, bfs_distances, graph_from_dict, graph_to_dict
from .program import LABELS, ActionLabel, Move
from .state import (
    Configuration,
    NodeState,
    config_from_dict,
    config_to_dict,
    randomize_configuration,
    zeroed_configuration,
)

__all__ = [
    "DAEMON_KINDS",
    "DaemonKind",
    "Daemon",
    "NotEnabledError",
    "StepRecord",
    "Trace",
    "RunResult",
    "enabled_actions",
    "enabled_nodes",
    "execute_step",
    "run",
    "count_rounds",
    "round_ends",
    "rounds_to_reach",
    "replay",
    "default_max_steps",
    "randomize_configuration",
    "zeroed_configuration",
]

TRACE_FORMAT_VERSION = 1

DAEMON_KINDS = ("synchronous", "central_random", "distributed_random", "adversarial_greedy")


class NotEnabledError(ValueError):
    """A daemon (or caller) picked a node with no enabled action."""


# -- daemons -------------------------------------------------------------------


@dataclass(frozen=True)
class DaemonKind:
    variant: str = "distributed_random"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.variant not in DAEMON_KINDS:
            raise ValueError(f"unknown daemon {self.variant!r}; expected one of {DAEMON_KINDS}")

    def make(self) -> "Daemon":
        return Daemon(self)


class Daemon:
    """Stateful scheduler for one run; build a fresh one per run."""

    def __init__(self, kind: DaemonKind) -> None:
        self.kind = kind
        self.rng = random.Random(kind.seed)

    def choose(self, enabled: Sequence[int], config: Mapping[int, NodeState]) -> list[int]:
        if not enabled:
            raise ValueError("daemon called with no enabled node")
        nodes = sorted(enabled)
        v = self.kind.variant
        if v == "synchronous":
            return nodes
        if v == "central_random":
            return [self.rng.choice(nodes)]
        if v == "distributed_random":
            picked = [p for p in nodes if self.rng.random() < 0.5]
            return picked or [self.rng.choice(nodes)]
        # adversarial_greedy: the worst-ranked enabled node moves alone
        return [max(nodes, key=lambda p: (config[p].d, p))]


# -- steps ---------------------------------------------------------------------


def _evaluate(
    c: Mapping[int, NodeState],
    g: Graph,
    p: int,
    program: LocalProgram,
    distances: Mapping[int, int] | None,
) -> list[Move]:
    return program.evaluate(program.view(c, g, p, distances))


def _resolve(
    g: Graph, program: LocalProgram | None, distances: Mapping[int, int] | None
) -> tuple[LocalProgram, Mapping[int, int] | None]:
    if program is None:
        program = compose_layers(use_bfs=False)
    if distances is None and not program.use_bfs:
        distances = bfs_distances(g)
    return program, distances


def enabled_actions(
    c: Mapping[int, NodeState],
    g: Graph,
    node: int,
    program: LocalProgram | None = None,
    distances: Mapping[int, int] | None = None,
) -> list[ActionLabel]:
    """Labels of all actions enabled at ``node``, highest priority first."""
    program, distances = _resolve(g, program, distances)
    return [label for label, _ in _evaluate(c, g, node, program, distances)]


def enabled_nodes(
    c: Mapping[int, NodeState],
    g: Graph,
    program: LocalProgram | None = None,
    distances: Mapping[int, int] | None = None,
) -> list[int]:
    program, distances = _resolve(g, program, distances)
    return [p for p in g.nodes if _evaluate(c, g, p, program, distances)]


@dataclass(frozen=True)
class StepRecord:
    enabled: tuple[int, ...]
    moves: tuple[tuple[int, str], ...]
    disabled: tuple[int, ...]

    @property
    def movers(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.moves)

    def to_dict(self) -> dict:
        return {
            "enabled": list(self.enabled),
            "moves": [[p, label] for p, label in self.moves],
            "disabled": list(self.disabled),
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "StepRecord":
        return cls(
            enabled=tuple(int(p) for p in doc["enabled"]),
            moves=tuple((int(p), str(label)) for p, label in doc["moves"]),
            disabled=tuple(int(p) for p in doc["disabled"]),
        )


def _apply(
    c: Mapping[int, NodeState], fired: Mapping[int, Move]
) -> Configuration:
    new = dict(c)
    for p, (_, upd) in fired.items():
        new[p] = c[p].update(**upd)
    return new


def execute_step(
    c: Mapping[int, NodeState],
    g: Graph,
    chosen: Sequence[int],
    program: LocalProgram | None = None,
    distances: Mapping[int, int] | None = None,
) -> tuple[Configuration, StepRecord]:
    """Fire the priority action of every chosen node with composite atomicity."""
    program, distances = _resolve(g, program, distances)
    chosen = sorted(set(chosen))
    if not chosen:
        raise ValueError("a step needs at least one chosen node")
    before = {p: _evaluate(c, g, p, program, distances) for p in g.nodes}
    fired = {}
    for p in chosen:
        if p not in before:
            raise NotEnabledError(f"node {p} is not in the graph")
        if not before[p]:
            raise NotEnabledError(f"node {p} is not enabled")
        fired[p] = before[p][0]
    new = _apply(c, fired)
    disabled = tuple(
        p
        for p in g.nodes
        if before[p] and p not in fired and not _evaluate(new, g, p, program, distances)
    )
    record = StepRecord(
        enabled=tuple(p for p in g.nodes if before[p]),
        moves=tuple((p, fired[p][0].name) for p in chosen),
        disabled=disabled,
    )
    return new, record


# -- runs ----------------------------------------------------------------------


def default_max_steps(g: Graph) -> int:
    return 50 * g.n**3


@dataclass
class Trace:
    graph: Graph
    program: dict
    daemon: DaemonKind | None
    initial: Configuration
    steps: list[StepRecord] = field(default_factory=list)
    final: Configuration | None = None
    terminal: bool = False

    @property
    def n_steps(self) -> int:
        return len(self.steps)

    @property
    def moves(self) -> int:
        return sum(len(s.moves) for s in self.steps)

    def moves_by_label(self) -> dict[str, int]:
        out = {name: 0 for name in LABELS}
        for s in self.steps:
            for _, label in s.moves:
                out[label] += 1
        return out

    def layer_moves(self, layer: str) -> int:
        counts = self.moves_by_label()
        return sum(n for name, n in counts.items() if LABELS[name].layer == layer)

    @property
    def rounds(self) -> int:
        return count_rounds(self)

    def to_dict(self) -> dict:
        return {
            "format": "sscvc.trace",
            "version": TRACE_FORMAT_VERSION,
            "graph": graph_to_dict(self.graph),
            "program": dict(self.program),
            "daemon": None
            if self.daemon is None
            else {"variant": self.daemon.variant, "seed": self.daemon.seed},
            "initial": config_to_dict(self.initial),
            "steps": [s.to_dict() for s in self.steps],
            "final": None if self.final is None else config_to_dict(self.final),
            "terminal": self.terminal,
            "counters": {
                "steps": self.n_steps,
                "moves": self.moves,
                "rounds": self.rounds,
                "moves_by_label": self.moves_by_label(),
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Trace":
        if doc.get("format") != "sscvc.trace":
            raise ValueError(f"not a trace document: format={doc.get('format')!r}")
        if doc.get("version") != TRACE_FORMAT_VERSION:
            raise ValueError(f"unsupported trace version {doc.get('version')!r}")
        d = doc.get("daemon")
        return cls(
            graph=graph_from_dict(doc["graph"]),
            program=dict(doc["program"]),
            daemon=None if d is None else DaemonKind(d["variant"], int(d["seed"])),
            initial=config_from_dict(doc["initial"]),
            steps=[StepRecord.from_dict(s) for s in doc["steps"]],
            final=None if doc["final"] is None else config_from_dict(doc["final"]),
            terminal=bool(doc["terminal"]),
        )

    @classmethod
    def loads(cls, text: str) -> "Trace":
        return cls.from_dict(json.loads(text))


@dataclass
class RunResult:
    trace: Trace
    final: Configuration
    terminal: bool

    @property
    def diverged(self) -> bool:
        return not self.terminal


def run(
    g: Graph,
    c0: Mapping[int, NodeState],
    daemon: DaemonKind | str = "distributed_random",
    max_steps: int | None = None,
    program: LocalProgram | None = None,
    distances: Mapping[int, int] | None = None,
    observer=None,
) -> RunResult:
    """Run until no node is enabled or ``max_steps`` steps have executed.

    ``observer(step_index, config)`` is called on the initial configuration
    (index 0) and after every step; returning True stops observation calls
    for the rest of the run (the run itself continues).
    """
    if isinstance(daemon, str):
        daemon = DaemonKind(daemon)
    program, distances = _resolve(g, program, distances)
    if max_steps is None:
        max_steps = default_max_steps(g)
    if max_steps <= 0:
        raise ValueError("max_steps must be positive")
    scheduler = daemon.make()
    c: Configuration = dict(c0)
    trace = Trace(graph=g, program=program.describe(), daemon=daemon, initial=dict(c0))
    moves = {p: _evaluate(c, g, p, program, distances) for p in g.nodes}
    enabled = [p for p in g.nodes if moves[p]]
    watching = observer is not None and not observer(0, c)

    while enabled and len(trace.steps) < max_steps:
        chosen = sorted(set(scheduler.choose(enabled, c)))
        if not chosen or not set(chosen) <= set(enabled):
            raise NotEnabledError("daemon violated its contract")
        fired = {p: moves[p][0] for p in chosen}
        c = _apply(c, fired)
        affected = set(chosen)
        for p in chosen:
            affected.update(g.neighbors(p))
        for p in affected:
            moves[p] = _evaluate(c, g, p, program, distances)
        new_enabled = [p for p in g.nodes if moves[p]]
        new_set = set(new_enabled)
        disabled = tuple(p for p in enabled if p not in fired and p not in new_set)
        trace.steps.append(
            StepRecord(
                enabled=tuple(enabled),
                moves=tuple((p, fired[p][0].name) for p in chosen),
                disabled=disabled,
            )
        )
        enabled = new_enabled
        if watching and observer(len(trace.steps), c):
            watching = False

    trace.final = c
    trace.terminal = not enabled
    return RunResult(trace=trace, final=c, terminal=trace.terminal)


def replay(
    trace: Trace, distances: Mapping[int, int] | None = None
) -> list[Configuration]:
    """Re-execute the recorded choices; every configuration, initial first.

    Raises ValueError if a recorded label or disabled set does not match.
    """
    program = compose_layers(
        use_bfs=trace.program["use_bfs"], variant=trace.program["variant"]
    )
    g = trace.graph
    program, distances = _resolve(g, program, distances)
    configs = [dict(trace.initial)]
    c = configs[0]
    for i, rec in enumerate(trace.steps):
        c, got = execute_step(c, g, rec.movers, program, distances)
        if got != rec:
            raise ValueError(f"replay diverged at step {i}: {got} != {rec}")
        configs.append(c)
    if trace.final is not None and c != trace.final:
        raise ValueError("replay did not reproduce the final configuration")
    return configs


# -- rounds --------------------------------------------------------------------


def round_ends(trace: Trace) -> list[int]:
    """Configuration indices at which each complete round ends.

    The pending set starts as the nodes enabled at the round's first
    configuration; a node leaves it when it moves or takes a disabling
    action. A round ends at the step that empties the set.
    """
    ends: list[int] = []
    pending: set[int] | None = None
    for i, rec in enumerate(trace.steps):
        if pending is None:
            pending = set(rec.enabled)
        pending.difference_update(rec.movers)
        pending.difference_update(rec.disabled)
        if not pending:
            ends.append(i + 1)
            pending = None
    return ends


def count_rounds(trace: Trace) -> int:
    return len(round_ends(trace))


def rounds_to_reach(trace: Trace, index: int) -> int:
    """Number of rounds (the last possibly partial) spanning configurations 0..index."""
    if index <= 0:
        return 0
    return sum(1 for b in round_ends(trace) if b < index) + 1
