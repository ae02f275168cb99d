"""Executable correctness conditions, reference algorithms and exact oracles.

Everything here reads configurations and the true graph directly; none of
it goes through the guarded-action code paths in :mod:`sscvc.cmcp`.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .cmcp import DEFAULT_VARIANT
from .cvc import in_vc_predicate
from .graph import Graph, bfs_distances
from .state import NodeState

ORACLE_CAP = 20


class OracleCapError(ValueError):
    pass


Rank = tuple[int, int]


def _ranker(dist: Mapping[int, int]):
    return lambda p: (dist[p], p)


def true_selectors(c: Mapping[int, NodeState], g: Graph, p: int, dist: Mapping[int, int]) -> list[int]:
    """Better-ranked neighbors whose ``S`` lists ``p``."""
    rank = _ranker(dist)
    return [q for q in g.neighbors(p) if rank(q) < rank(p) and p in c[q].S]


def is_selected(c, g, p, dist) -> bool:
    return bool(true_selectors(c, g, p, dist))


def local_leaders(c, g, dist) -> list[int]:
    return [p for p in g.nodes if not is_selected(c, g, p, dist)]


def is_free(c, p: int, q: int) -> bool:
    """``q`` has not elected a node other than ``p``."""
    return c[q].lead in (None, p, q)


def reference_clique(
    c: Mapping[int, NodeState],
    g: Graph,
    p: int,
    dist: Mapping[int, int],
    variant: str = DEFAULT_VARIANT,
) -> frozenset[int]:
    """The selection a settled leader is expected to hold, built on the true graph."""
    rank = _ranker(dist)
    selection = [p]
    binding = [p]
    for q in sorted(g.neighbors(p)):
        if rank(q) < rank(p):
            continue
        if all(g.has_edge(q, s) for s in binding):
            selection.append(q)
            if variant == "literal" or is_free(c, p, q):
                binding.append(q)
    return frozenset(selection)


# -- correct cliques and legitimacy ---------------------------------------------


@dataclass(frozen=True)
class CliqueVerdict:
    leader: int
    single_leader: bool
    maximal_selection: bool
    elected_by_best: bool
    members_recorded: bool
    self_elected: bool
    greedy_selection: bool
    exact_members: bool
    maximal_in_graph: bool  # reported only, not part of ``ok``

    @property
    def claims(self) -> tuple[bool, bool, bool, bool]:
        return (
            self.single_leader,
            self.maximal_selection,
            self.elected_by_best,
            self.members_recorded,
        )

    @property
    def ok(self) -> bool:
        return all(self.claims) and self.self_elected and self.greedy_selection and self.exact_members


def check_correct_clique(
    c: Mapping[int, NodeState],
    g: Graph,
    leader: int,
    dist: Mapping[int, int] | None = None,
    variant: str = DEFAULT_VARIANT,
) -> CliqueVerdict:
    """Evaluate the four correct-clique claims at an unselected node.

    ``S`` and ``C`` include the leader itself. The maximality claim ranges
    over lower-ranked neighbors; under the repaired rules neighbors that
    elected another node are not candidates.
    """
    dist = bfs_distances(g) if dist is None else dist
    rank = _ranker(dist)
    p = leader
    st = c[p]
    S, C = st.S, st.C
    others = S - {p}

    claim1 = not any(not is_selected(c, g, q, dist) for q in C if q != p)

    # Under the repaired rules, selected neighbors that went elsewhere are
    # ignored: the clique is the part of S still bound to the leader.
    lower = [q for q in g.neighbors(p) if rank(p) < rank(q)]
    core = S
    if variant == "repaired":
        lower = [q for q in lower if is_free(c, p, q)]
        core = frozenset(q for q in S if is_free(c, p, q))
    shape_ok = p in S and all(q in g.neighbor_set(p) and rank(p) < rank(q) for q in others)
    claim2 = shape_ok and g.is_clique(core)
    for q in lower:
        in_s = q in core
        fits = all(g.has_edge(q, s) for s in core if s != q)
        if in_s != fits:
            claim2 = False

    claim3 = True
    for q in others:
        sel = true_selectors(c, g, q, dist)
        if sel and min(sel, key=rank) == p and c[q].lead != p:
            claim3 = False

    claim4 = all(q in C for q in S if c[q].lead == p)

    members = frozenset(q for q in S if c[q].lead == p)
    common = set(g.nodes) - S
    for s in S:
        common &= g.neighbor_set(s)

    return CliqueVerdict(
        leader=p,
        single_leader=claim1,
        maximal_selection=claim2,
        elected_by_best=claim3,
        members_recorded=claim4,
        self_elected=st.lead == p,
        greedy_selection=S == reference_clique(c, g, p, dist, variant),
        exact_members=C == members,
        maximal_in_graph=not common,
    )


def advertisements_correct(c, g, dist) -> bool:
    return all(c[p].N == g.neighbor_set(p) and c[p].d == dist[p] for p in g.nodes)


def member_settled(c, g, q, dist) -> bool:
    """A selected node follows its best selector and holds no selection of its own."""
    sel = true_selectors(c, g, q, dist)
    best = min(sel, key=_ranker(dist))
    st = c[q]
    return st.lead == best and not st.S and not st.C


def is_legitimate_cmcp(
    c: Mapping[int, NodeState],
    g: Graph,
    dist: Mapping[int, int] | None = None,
    variant: str = DEFAULT_VARIANT,
) -> bool:
    """Every local leader owns a correct clique and every other node has settled."""
    dist = bfs_distances(g) if dist is None else dist
    if not advertisements_correct(c, g, dist):
        return False
    for p in g.nodes:
        if is_selected(c, g, p, dist):
            if not member_settled(c, g, p, dist):
                return False
        elif not check_correct_clique(c, g, p, dist, variant).ok:
            return False
    return True


def is_legitimate_cvc(c: Mapping[int, NodeState], g: Graph) -> bool:
    return all(c[p].In == in_vc_predicate(c[p].lead, c[p].C, p) for p in g.nodes)


# -- partitions ------------------------------------------------------------------


@dataclass
class PartitionReport:
    cliques: list[tuple[int, frozenset[int]]]
    partition: bool
    complete: bool
    minimal: bool
    connected: bool
    trivial_independent: bool
    per_distance: dict[int, int]
    n_c: int
    problems: list[str] = field(default_factory=list)

    @property
    def clique_count(self) -> int:
        return len(self.cliques)

    @property
    def trivial_count(self) -> int:
        return sum(1 for _, m in self.cliques if len(m) == 1)

    @property
    def ok(self) -> bool:
        return (
            self.partition
            and self.complete
            and self.minimal
            and self.connected
            and self.trivial_independent
        )

    def to_dict(self) -> dict:
        return {
            "cliques": [{"leader": p, "members": sorted(m)} for p, m in self.cliques],
            "partition": self.partition,
            "complete": self.complete,
            "minimal": self.minimal,
            "connected": self.connected,
            "trivial_independent": self.trivial_independent,
            "clique_count": self.clique_count,
            "trivial_count": self.trivial_count,
            "per_distance": {str(k): v for k, v in sorted(self.per_distance.items())},
            "n_c": self.n_c,
            "problems": list(self.problems),
        }


def partition_report(
    g: Graph,
    cliques: Iterable[tuple[int, Iterable[int]]],
    dist: Mapping[int, int] | None = None,
) -> PartitionReport:
    """Check that leader-labelled cliques form a connected minimal clique partition."""
    dist = bfs_distances(g) if dist is None else dist
    rank = _ranker(dist)
    cl = sorted(((p, frozenset(m)) for p, m in cliques), key=lambda t: rank(t[0]))
    problems: list[str] = []

    seen: Counter[int] = Counter()
    for _, m in cl:
        seen.update(m)
    dup = sorted(p for p, k in seen.items() if k > 1)
    missing = sorted(set(g.nodes) - set(seen))
    stray = sorted(set(seen) - set(g.nodes))
    partition = not dup and not missing and not stray
    if dup:
        problems.append(f"nodes in several cliques: {dup}")
    if missing:
        problems.append(f"nodes in no clique: {missing}")
    if stray:
        problems.append(f"unknown nodes: {stray}")

    complete = True
    for p, m in cl:
        if not (m <= set(g.nodes) and g.is_clique(m)):
            complete = False
            problems.append(f"clique of {p} is not complete: {sorted(m)}")

    minimal = True
    for (p, a), (q, b) in combinations(cl, 2):
        if (a | b) <= set(g.nodes) and g.is_clique(a | b):
            minimal = False
            problems.append(f"cliques of {p} and {q} merge into a clique")

    nontrivial = set().union(*[m for _, m in cl if len(m) > 1]) if cl else set()
    connected = nontrivial <= set(g.nodes) and g.induces_connected(nontrivial)
    if not connected:
        problems.append("union of non-trivial cliques is disconnected")

    trivial = [next(iter(m)) for _, m in cl if len(m) == 1]
    trivial_independent = not any(
        g.has_edge(a, b) for a, b in combinations(trivial, 2) if a in dist and b in dist
    )
    if not trivial_independent:
        problems.append("two trivial cliques are adjacent")

    per_distance = dict(sorted(Counter(dist[p] for p, _ in cl if p in dist).items()))
    return PartitionReport(
        cliques=cl,
        partition=partition,
        complete=complete,
        minimal=minimal,
        connected=connected,
        trivial_independent=trivial_independent,
        per_distance=per_distance,
        n_c=max(per_distance.values(), default=0),
        problems=problems,
    )


def extract_cliques(c: Mapping[int, NodeState], g: Graph) -> list[tuple[int, frozenset[int]]]:
    return [(p, c[p].C) for p in g.nodes if c[p].lead == p]


def check_cmcp_solution(
    c: Mapping[int, NodeState], g: Graph, dist: Mapping[int, int] | None = None
) -> PartitionReport:
    return partition_report(g, extract_cliques(c, g), dist)


# -- covers ----------------------------------------------------------------------


def is_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    s = set(cover)
    return all(u in s or v in s for u, v in g.edges())


def brute_force_optimal_cvc(g: Graph, cap: int = ORACLE_CAP) -> tuple[int, frozenset[int]]:
    """Smallest connected vertex cover by exhaustive search over subsets."""
    if g.n > cap:
        raise OracleCapError(f"exhaustive search is capped at {cap} nodes (got {g.n})")
    edges = g.edges()
    if not edges:
        return 0, frozenset()
    for k in range(1, g.n + 1):
        for subset in combinations(g.nodes, k):
            s = set(subset)
            if all(u in s or v in s for u, v in edges) and g.induces_connected(s):
                return k, frozenset(s)
    raise AssertionError("the full node set is always a connected cover")


@dataclass
class CoverReport:
    cover: frozenset[int]
    is_vertex_cover: bool
    is_connected: bool
    optimal_size: int | None = None
    witness: frozenset[int] | None = None

    @property
    def size(self) -> int:
        return len(self.cover)

    @property
    def ratio(self) -> float | None:
        if self.optimal_size is None:
            return None
        if self.optimal_size == 0:
            return 1.0
        return self.size / self.optimal_size

    @property
    def within_factor_two(self) -> bool | None:
        if self.optimal_size is None:
            return None
        return self.size <= 2 * self.optimal_size

    @property
    def ok(self) -> bool:
        return self.is_vertex_cover and self.is_connected and self.within_factor_two is not False

    def to_dict(self) -> dict:
        return {
            "cover": sorted(self.cover),
            "is_vertex_cover": self.is_vertex_cover,
            "is_connected": self.is_connected,
            "size": self.size,
            "optimal_size": self.optimal_size,
            "witness": None if self.witness is None else sorted(self.witness),
            "ratio": self.ratio,
        }


def cover_report(g: Graph, cover: Iterable[int], with_oracle: bool = False) -> CoverReport:
    s = frozenset(cover)
    rep = CoverReport(cover=s, is_vertex_cover=is_vertex_cover(g, s), is_connected=g.induces_connected(s))
    if with_oracle:
        rep.optimal_size, rep.witness = brute_force_optimal_cvc(g)
    return rep


def check_cvc_solution(
    c: Mapping[int, NodeState], g: Graph, with_oracle: bool = False
) -> CoverReport:
    return cover_report(g, (p for p in g.nodes if c[p].In), with_oracle)


def clique_lower_bound(report: PartitionReport) -> int:
    """Sum of ``|C| - 1`` over non-trivial cliques; never exceeds the optimum."""
    return sum(len(m) - 1 for _, m in report.cliques if len(m) > 1)


# -- centralized reference ---------------------------------------------------------


def centralized_cliques(g: Graph, seed: int) -> list[tuple[int, frozenset[int]]]:
    rng = random.Random(seed)
    marked: set[int] = set()
    out: list[tuple[int, frozenset[int]]] = []
    start = rng.choice(g.nodes)
    while True:
        members = [start]
        for q in g.neighbors(start):
            if q not in marked and all(g.has_edge(q, s) for s in members):
                members.append(q)
        out.append((start, frozenset(members)))
        marked.update(members)
        frontier = sorted(
            {q for p in marked for q in g.neighbors(p) if q not in marked}
        )
        if not frontier:
            break
        start = rng.choice(frontier)
    return out


def centralized_reference_cmcp(
    g: Graph, seed: int, dist: Mapping[int, int] | None = None
) -> PartitionReport:
    """Sequential construction: grow a greedy maximal clique from a random
    unmarked node next to the marked region, mark it, repeat."""
    return partition_report(g, centralized_cliques(g, seed), dist)
