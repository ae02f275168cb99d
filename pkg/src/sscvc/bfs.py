"""Distance layer: the classical min+1 rule anchored at the root.

Stands in for a full self-stabilizing BFS construction; it only needs to
deliver correct hop distances to the clique layer.
"""

from __future__ import annotations

from .program import LABELS, Move, View


def bfs_target(view: View) -> int:
    if view.is_root:
        return 0
    if not view.neighbors:
        return 0
    best = min(view.of(q).d_hat for q in view.neighbors)
    return min(best + 1, view.bound)


def bfs_rule(view: View) -> dict | None:
    """Assignment made by the distance action, or None when it is disabled."""
    target = bfs_target(view)
    if view.state.d_hat != target:
        return {"d_hat": target}
    return None


class BfsLayer:
    name = "BFS"

    def evaluate(self, view: View) -> list[Move]:
        upd = bfs_rule(view)
        return [] if upd is None else [(LABELS["D"], upd)]
