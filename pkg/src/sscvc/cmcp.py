"""Self-stabilizing connected minimal clique partition.

Every node runs four prioritized actions:

    N   advertise the neighbor set and the distance input
    C1  unselected node: select a greedy clique among lower-ranked neighbors
    C2  selected node: elect the best-ranked selector, drop own selection
    C3  unselected node: record which selected neighbors accepted it

A node's rank is ``(d, id)`` compared lexicographically; smaller is better.
All macros read *advertised* ``d`` and ``N`` values, never the oracle.

Two rule sets are provided.  ``"literal"`` evaluates the guards word for word.
``"repaired"`` (the default) adds three changes without which
terminal configurations can fail to be clique partitions at all:

* C1 also fires when an unselected node has ``lead != id``; otherwise a
  leader whose ``S`` happens to be right but whose ``lead`` is corrupted
  never claims its own clique.
* C2 also fires when a selected node still holds a non-empty ``S`` or
  ``C``; otherwise stale selections keep capturing lower-ranked nodes.
* In the greedy clique, a neighbor that already elected another node no
  longer blocks later candidates.  Without it a leader can keep a neighbor
  taken by a better-ranked leader in its selection, reject a compatible
  node because of it, and leave two adjacent trivial cliques behind (see
  ``tests/test_literal_rules.py``).  Dropping taken neighbors from the
  selection outright instead livelocks under the synchronous daemon.
"""

from __future__ import annotations

from .program import LABELS, Move, View

VARIANTS = ("repaired", "literal")
DEFAULT_VARIANT = "repaired"


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown rule set {variant!r}; expected one of {VARIANTS}")


def rank_of(view: View, q: int) -> tuple[int, int]:
    return view.of(q).d, q


def candidate_leaders(view: View) -> frozenset[int]:
    """Neighbors whose advertised rank beats this node's (``LNeig``)."""
    own = (view.state.d, view.node)
    return frozenset(q for q in view.neighbors if rank_of(view, q) < own)


def selectors(view: View) -> tuple[frozenset[int], bool]:
    """Candidate leaders listing this node in their ``S`` (``SNeig``), and ``Selected``."""
    p = view.node
    sn = frozenset(q for q in candidate_leaders(view) if p in view.of(q).S)
    return sn, bool(sn)


def leader_macro(view: View) -> int | None:
    """Best selector: minimum advertised ``d``, ties broken by identifier."""
    sn, _ = selectors(view)
    if not sn:
        return None
    return min(sn, key=lambda q: rank_of(view, q))


def _free(view: View, q: int) -> bool:
    """``q`` has not elected a node other than this one."""
    lead = view.of(q).lead
    return lead is None or lead == view.node or lead == q


def clique_temp(view: View, variant: str = DEFAULT_VARIANT) -> frozenset[int]:
    """Greedy clique over lower-ranked neighbors in ascending identifier order.

    Under the repaired rules a neighbor that elected another node is still
    selected when compatible, but it no longer constrains later candidates.
    """
    p = view.node
    lneig = candidate_leaders(view)
    chosen = {p}
    binding = {p}
    for q in view.neighbors:
        if q in lneig:
            continue
        if variant == "literal":
            if chosen <= view.of(q).N:
                chosen.add(q)
        elif binding <= view.of(q).N:
            chosen.add(q)
            if _free(view, q):
                binding.add(q)
    return frozenset(chosen)


def clique_members(view: View) -> frozenset[int]:
    """Members of ``S`` that elected this node (``Clique_p``).

    The node itself counts when ``lead == id``; ``S`` may hold stale
    non-neighbors after a fault, which are read as not electing anyone.
    """
    p = view.node
    own = view.state
    out = set()
    for q in own.S:
        if q == p:
            if own.lead == p:
                out.add(p)
        elif q in view.neighbor_set and view.of(q).lead == p:
            out.add(q)
    return frozenset(out)


def cmcp_enabled(view: View, variant: str = DEFAULT_VARIANT) -> list[Move]:
    """Every enabled clique-layer action at ``view.node``, highest priority first."""
    _check_variant(variant)
    p = view.node
    st = view.state
    out: list[Move] = []

    if st.N != view.neighbor_set or st.d != view.dist:
        out.append((LABELS["N"], {"N": view.neighbor_set, "d": view.dist}))

    sn, selected = selectors(view)
    if selected:
        leader = min(sn, key=lambda q: rank_of(view, q))
        stale = st.lead != leader
        if variant == "repaired":
            stale = stale or bool(st.S) or bool(st.C)
        if stale:
            out.append(
                (LABELS["C2"], {"lead": leader, "S": frozenset(), "C": frozenset()})
            )
        return out

    ct = clique_temp(view, variant)
    c1 = st.S != ct
    if variant == "repaired":
        c1 = c1 or st.lead != p
    if c1:
        out.append((LABELS["C1"], {"S": ct, "lead": p}))
    else:
        members = clique_members(view)
        if st.C != members:
            out.append((LABELS["C3"], {"C": members}))
    return out


def cmcp_program(view: View, variant: str = DEFAULT_VARIANT) -> Move | None:
    """The highest-priority enabled action with its assignments, if any."""
    moves = cmcp_enabled(view, variant)
    return moves[0] if moves else None


class CmcpLayer:
    name = "CMCP"

    def __init__(self, variant: str = DEFAULT_VARIANT) -> None:
        _check_variant(variant)
        self.variant = variant

    def evaluate(self, view: View) -> list[Move]:
        return cmcp_enabled(view, self.variant)
