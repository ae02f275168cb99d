"""Guarded-action vocabulary shared by the protocol layers and the engine."""

from __future__ import annotations

from typing import Mapping, NamedTuple, Protocol, Sequence

from .state import NodeState

LAYER_ORDER = ("BFS", "CMCP", "CVC")


class ActionLabel(NamedTuple):
    layer: str
    name: str

    def sort_key(self) -> tuple[int, int]:
        return LAYER_ORDER.index(self.layer), ACTION_NAMES[self.layer].index(self.name)

    def __str__(self) -> str:
        return self.name


ACTION_NAMES = {
    "BFS": ("D",),
    "CMCP": ("N", "C1", "C2", "C3"),
    "CVC": ("VC",),
}

LABELS = {
    name: ActionLabel(layer, name) for layer, names in ACTION_NAMES.items() for name in names
}

# A fired action: its label and the variable assignments it performs.
Move = tuple[ActionLabel, dict]


class View:
    """What one node may read: its own state and its neighbors' states.

    ``dist`` is the distance input handed to the clique layer (oracle value
    or the node's own ``d_hat``); ``bound`` caps distance-like values.
    """

    __slots__ = ("node", "neighbors", "config", "dist", "is_root", "bound", "_nset")

    def __init__(
        self,
        node: int,
        neighbors: Sequence[int],
        config: Mapping[int, NodeState],
        dist: int,
        is_root: bool,
        bound: int,
    ) -> None:
        self.node = node
        self.neighbors = tuple(neighbors)
        self.config = config
        self.dist = dist
        self.is_root = is_root
        self.bound = bound
        self._nset = None

    @property
    def state(self) -> NodeState:
        return self.config[self.node]

    @property
    def neighbor_set(self) -> frozenset[int]:
        if self._nset is None:
            self._nset = frozenset(self.neighbors)
        return self._nset

    def of(self, q: int) -> NodeState:
        return self.config[q]


class Layer(Protocol):
    name: str

    def evaluate(self, view: View) -> list[Move]:
        """All enabled actions of this layer at ``view.node``, by priority."""
        ...
