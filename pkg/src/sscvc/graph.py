"""Static network topology: validation, generation, BFS distances, I/O.

Neighbor tuples are kept sorted by identifier; that order is the local
order every node uses when it walks its neighborhood.
"""

from __future__ import annotations

import json
import random
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

GRAPH_FORMAT_VERSION = 1


class GraphError(ValueError):
    """Base class for malformed or unusable graphs."""


class GraphParseError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph with a designated root.

    Build instances with :meth:`from_edges`; the constructor trusts its
    arguments and only re-runs validation.
    """

    nodes: tuple[int, ...]
    adjacency: Mapping[int, tuple[int, ...]]
    root: int
    _neighbor_sets: Mapping[int, frozenset[int]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "_neighbor_sets",
            {p: frozenset(qs) for p, qs in self.adjacency.items()},
        )
        _validate(self)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        nodes: Iterable[int] = (),
        root: int | None = None,
    ) -> "Graph":
        node_set = set(nodes)
        adj: dict[int, set[int]] = {}
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise SelfLoopError(f"self-loop on node {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {key[0]}-{key[1]}")
            seen.add(key)
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
            node_set.update(key)
        if not node_set:
            raise GraphError("graph has no nodes")
        for p in node_set:
            if p < 0:
                raise GraphError(f"negative node identifier {p}")
        ordered = tuple(sorted(node_set))
        if root is None:
            root = ordered[0]
        adjacency = {p: tuple(sorted(adj.get(p, ()))) for p in ordered}
        return cls(nodes=ordered, adjacency=adjacency, root=int(root))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return sum(len(qs) for qs in self.adjacency.values()) // 2

    def neighbors(self, p: int) -> tuple[int, ...]:
        return self.adjacency[p]

    def neighbor_set(self, p: int) -> frozenset[int]:
        return self._neighbor_sets[p]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(p, q) for p in self.nodes for q in self.adjacency[p] if p < q]

    def with_root(self, root: int) -> "Graph":
        return Graph(nodes=self.nodes, adjacency=self.adjacency, root=root)

    def is_clique(self, members: Iterable[int]) -> bool:
        ms = list(members)
        return all(self.has_edge(a, b) for a, b in combinations(ms, 2))

    def induces_connected(self, members: Iterable[int]) -> bool:
        """True when ``members`` induces a connected subgraph (vacuous for <= 1 node)."""
        ms = set(members)
        if len(ms) <= 1:
            return True
        start = next(iter(ms))
        seen = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in self.adjacency[p]:
                if q in ms and q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen == ms


def _validate(g: Graph) -> None:
    if list(g.nodes) != sorted(set(g.nodes)):
        raise GraphError("node tuple must be sorted and duplicate-free")
    if set(g.adjacency) != set(g.nodes):
        raise GraphError("adjacency keys must match the node set")
    if g.root not in g.adjacency:
        raise GraphError(f"root {g.root} is not a node")
    for p, qs in g.adjacency.items():
        if list(qs) != sorted(set(qs)):
            raise GraphError(f"neighbors of {p} must be sorted and unique")
        for q in qs:
            if q == p:
                raise SelfLoopError(f"self-loop on node {p}")
            if q not in g.adjacency or p not in g.adjacency[q]:
                raise GraphError(f"asymmetric adjacency between {p} and {q}")
    if not g.induces_connected(g.nodes):
        raise DisconnectedGraphError("graph is not connected")


def bfs_distances(g: Graph) -> dict[int, int]:
    """Hop distance from ``g.root`` to every node."""
    dist = {g.root: 0}
    queue = deque([g.root])
    while queue:
        p = queue.popleft()
        for q in g.adjacency[p]:
            if q not in dist:
                dist[q] = dist[p] + 1
                queue.append(q)
    return {p: dist[p] for p in g.nodes}


def eccentricity(g: Graph, source: int) -> int:
    return max(bfs_distances(g.with_root(source)).values())


def diameter(g: Graph) -> int:
    return max(eccentricity(g, p) for p in g.nodes)


# -- generators -------------------------------------------------------------


def generate_random_connected(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), then random inter-component edges until connected."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = {(u, v) for u, v in combinations(range(n), 2) if rng.random() < p}

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    while True:
        comps: dict[int, list[int]] = {}
        for x in range(n):
            comps.setdefault(find(x), []).append(x)
        if len(comps) <= 1:
            break
        a, b = rng.sample(sorted(comps), 2)
        u, v = rng.choice(comps[a]), rng.choice(comps[b])
        edges.add((min(u, v), max(u, v)))
        parent[find(u)] = find(v)
    return Graph.from_edges(sorted(edges), nodes=range(n))


def path_graph(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], nodes=range(n))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(combinations(range(n), 2), nodes=range(n))


def star_graph(leaves: int, root: int | None = None) -> Graph:
    """Center 0 with leaves 1..leaves."""
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)], nodes=[0], root=root)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


# -- serialization -----------------------------------------------------------

_EDGE_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")
_NODE_RE = re.compile(r"^\s*(\d+)\s*$")
_ROOT_RE = re.compile(r"^\s*root\s*:\s*(\d+)\s*$", re.IGNORECASE)


def parse_edge_list(text: str, root: int | None = None) -> Graph:
    """Parse ``u-v`` lines with ``#`` comments and an optional ``root: k`` header.

    A bare identifier on its own line declares an isolated node (only useful
    for the single-node graph). An explicit ``root`` argument overrides the
    header.
    """
    edges: list[tuple[int, int]] = []
    nodes: list[int] = []
    header_root = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _ROOT_RE.match(line):
            header_root = int(m.group(1))
        elif m := _EDGE_RE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
        elif m := _NODE_RE.match(line):
            nodes.append(int(m.group(1)))
        else:
            raise GraphParseError(f"line {lineno}: cannot parse {raw!r}")
    return Graph.from_edges(edges, nodes=nodes, root=root if root is not None else header_root)


def format_edge_list(g: Graph) -> str:
    lines = [f"root: {g.root}"]
    lines += [f"{u}-{v}" for u, v in g.edges()]
    if g.m == 0:
        lines += [str(p) for p in g.nodes]
    return "\n".join(lines) + "\n"


def graph_to_dict(g: Graph) -> dict:
    return {
        "format": "sscvc.graph",
        "version": GRAPH_FORMAT_VERSION,
        "root": g.root,
        "nodes": list(g.nodes),
        "adjacency": {str(p): list(g.adjacency[p]) for p in g.nodes},
    }


def graph_from_dict(doc: Mapping) -> Graph:
    try:
        if doc.get("format", "sscvc.graph") != "sscvc.graph":
            raise GraphParseError(f"unexpected format {doc.get('format')!r}")
        adjacency = {int(p): tuple(int(q) for q in qs) for p, qs in doc["adjacency"].items()}
        nodes = tuple(int(p) for p in doc["nodes"])
        root = int(doc["root"])
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphParseError(f"malformed graph document: {exc}") from exc
    return Graph(nodes=nodes, adjacency=adjacency, root=root)


def parse_graph(text: str, root: int | None = None) -> Graph:
    """Parse either a JSON graph document or the edge-list text format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc}") from exc
        g = graph_from_dict(doc)
        return g.with_root(root) if root is not None else g
    return parse_edge_list(text, root=root)


def dumps_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), indent=2, sort_keys=True) + "\n"
