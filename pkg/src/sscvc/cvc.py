"""Connected vertex cover flag and the layered composition of all protocols."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .bfs import BfsLayer
from .cmcp import DEFAULT_VARIANT, CmcpLayer
from .graph import Graph
from .program import ACTION_NAMES, LABELS, ActionLabel, Layer, Move, View
from .state import NodeState, value_bound


def in_vc_predicate(lead: int | None, C: frozenset[int], node: int) -> bool:
    """Membership rule: elected someone else, or leads a clique of size > 1."""
    return lead != node or len(C) > 1


def vc_program(view: View) -> Move | None:
    st = view.state
    want = in_vc_predicate(st.lead, st.C, view.node)
    if st.In != want:
        return LABELS["VC"], {"In": want}
    return None


class CvcLayer:
    name = "CVC"

    def evaluate(self, view: View) -> list[Move]:
        mv = vc_program(view)
        return [] if mv is None else [mv]


@dataclass(frozen=True)
class LocalProgram:
    """Layers in priority order; a node fires at most one action per step."""

    layers: tuple[Layer, ...]
    use_bfs: bool
    variant: str

    @property
    def actions(self) -> tuple[ActionLabel, ...]:
        return tuple(
            LABELS[name] for layer in self.layers for name in ACTION_NAMES[layer.name]
        )

    def distance_input(
        self, c: Mapping[int, NodeState], p: int, distances: Mapping[int, int] | None
    ) -> int:
        if self.use_bfs:
            return c[p].d_hat
        if distances is None:
            raise ValueError("oracle distances are required when the BFS layer is off")
        return distances[p]

    def view(
        self,
        c: Mapping[int, NodeState],
        g: Graph,
        p: int,
        distances: Mapping[int, int] | None,
    ) -> View:
        return View(
            node=p,
            neighbors=g.neighbors(p),
            config=c,
            dist=self.distance_input(c, p, distances),
            is_root=p == g.root,
            bound=value_bound(g),
        )

    def evaluate(self, view: View) -> list[Move]:
        out: list[Move] = []
        for layer in self.layers:
            out.extend(layer.evaluate(view))
        return out

    def describe(self) -> dict:
        return {"use_bfs": self.use_bfs, "variant": self.variant}


def compose_layers(use_bfs: bool = True, variant: str = DEFAULT_VARIANT) -> LocalProgram:
    """Distance layer (optional), then clique partition, then cover flag."""
    layers: list[Layer] = [BfsLayer()] if use_bfs else []
    layers += [CmcpLayer(variant), CvcLayer()]
    return LocalProgram(layers=tuple(layers), use_bfs=use_bfs, variant=variant)
