"""Per-node protocol state and whole-network configurations."""

from __future__ import annotations

import random
from dataclasses import dataclass, fields, replace
from typing import Mapping

from .graph import Graph

Configuration = dict  # NodeId -> NodeState; treated as immutable once built


@dataclass(frozen=True)
class NodeState:
    """Variables of all three layers at one node.

    ``d_hat`` belongs to the distance layer; ``N``, ``d``, ``S``, ``C`` and
    ``lead`` to the clique partition layer (``lead=None`` is bottom); ``In``
    to the cover layer. ``S`` and ``C`` include the node itself when it
    leads a clique.
    """

    d_hat: int = 0
    N: frozenset[int] = frozenset()
    d: int = 0
    S: frozenset[int] = frozenset()
    C: frozenset[int] = frozenset()
    lead: int | None = None
    In: bool = False

    def update(self, **changes) -> "NodeState":
        return replace(self, **changes) if changes else self

    def to_dict(self) -> dict:
        return {
            "d_hat": self.d_hat,
            "N": sorted(self.N),
            "d": self.d,
            "S": sorted(self.S),
            "C": sorted(self.C),
            "lead": self.lead,
            "In": self.In,
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "NodeState":
        return cls(
            d_hat=int(doc["d_hat"]),
            N=frozenset(int(x) for x in doc["N"]),
            d=int(doc["d"]),
            S=frozenset(int(x) for x in doc["S"]),
            C=frozenset(int(x) for x in doc["C"]),
            lead=None if doc["lead"] is None else int(doc["lead"]),
            In=bool(doc["In"]),
        )


STATE_FIELDS = tuple(f.name for f in fields(NodeState))


def zeroed_configuration(g: Graph) -> Configuration:
    return {p: NodeState() for p in g.nodes}


def value_bound(g: Graph) -> int:
    """Upper end of the distance fault domain, ``[0, 2n]``."""
    return 2 * g.n


def _subset(rng: random.Random, pool: tuple[int, ...]) -> frozenset[int]:
    return frozenset(x for x in pool if rng.random() < 0.5)


def random_node_state(g: Graph, p: int, rng: random.Random) -> NodeState:
    neig = g.neighbors(p)
    closed = tuple(sorted(neig + (p,)))
    bound = value_bound(g)
    leads: list[int | None] = [*neig, p, None]
    return NodeState(
        d_hat=rng.randint(0, bound),
        N=_subset(rng, neig),
        d=rng.randint(0, bound),
        S=_subset(rng, closed),
        C=_subset(rng, closed),
        lead=rng.choice(leads),
        In=rng.random() < 0.5,
    )


def randomize_configuration(g: Graph, seed: int) -> Configuration:
    """Every variable drawn uniformly from its fault-injection domain."""
    rng = random.Random(seed)
    return {p: random_node_state(g, p, rng) for p in g.nodes}


def in_domain(g: Graph, p: int, s: NodeState) -> bool:
    neig = g.neighbor_set(p)
    closed = neig | {p}
    bound = value_bound(g)
    return (
        0 <= s.d_hat <= bound
        and 0 <= s.d <= bound
        and s.N <= neig
        and s.S <= closed
        and s.C <= closed
        and (s.lead is None or s.lead in closed)
    )


def config_to_dict(c: Mapping[int, NodeState]) -> dict:
    return {str(p): c[p].to_dict() for p in sorted(c)}


def config_from_dict(doc: Mapping) -> Configuration:
    return {int(p): NodeState.from_dict(s) for p, s in sorted(doc.items(), key=lambda kv: int(kv[0]))}
