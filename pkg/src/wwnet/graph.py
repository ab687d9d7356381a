"""Multilayer graph data model: node/link taxonomy, validation, and structural queries.

A graph holds wired, wireless, and interfacing nodes joined by wired and
wireless undirected links. Interfacing nodes belong to both layers and are the
only gateways between them. Link routing weights live in a separate
:class:`WeightState` so a graph can be shared read-only across many
optimization runs.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    Disconnected,
    DuplicateLink,
    FormatError,
    InvalidParams,
    LayerViolation,
    NonpositiveCapacity,
    UnknownNode,
)


class NodeKind(enum.Enum):
    WIRED = "wired"
    WIRELESS = "wireless"
    INTERFACING = "interfacing"

    @property
    def in_wireless_layer(self) -> bool:
        return self in (NodeKind.WIRELESS, NodeKind.INTERFACING)

    @property
    def in_wired_layer(self) -> bool:
        return self in (NodeKind.WIRED, NodeKind.INTERFACING)


class LinkKind(enum.Enum):
    WIRED = "wired"
    WIRELESS = "wireless"


class ChannelMode(enum.Enum):
    """Wireless transmission mode: single shared channel or independent channels."""

    SINGLE = "single"
    MULTI = "multi"


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    capacity: float = 1.0
    pos: tuple[float, float] | None = None


@dataclass(frozen=True)
class Link:
    u: int
    v: int
    kind: LinkKind


class MultilayerGraph:
    """Validated simple undirected two-layer graph with O(deg) neighbor queries.

    Instances are immutable after construction; build them with
    :func:`build_graph`. Node order and link order are preserved from the
    input, which makes serialization deterministic.
    """

    def __init__(self, nodes: tuple[Node, ...], links: tuple[Link, ...]):
        self.nodes = nodes
        self.links = links
        self._index = {node.id: i for i, node in enumerate(nodes)}
        self._ids = np.array([node.id for node in nodes], dtype=np.int64)
        self._capacities = np.array([node.capacity for node in nodes], dtype=np.float64)
        self._kinds = tuple(node.kind for node in nodes)
        self._build_adjacency()

    # -- construction helpers -------------------------------------------------

    def _build_adjacency(self) -> None:
        n = len(self.nodes)
        deg = np.zeros(n, dtype=np.int64)
        wdeg = np.zeros(n, dtype=np.int64)
        for link in self.links:
            ui, vi = self._index[link.u], self._index[link.v]
            deg[ui] += 1
            deg[vi] += 1
            if link.kind is LinkKind.WIRELESS:
                wdeg[ui] += 1
                wdeg[vi] += 1
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        adj = np.zeros(indptr[-1], dtype=np.int32)
        adj_edge = np.zeros(indptr[-1], dtype=np.int32)
        wn_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(wdeg, out=wn_indptr[1:])
        wn_indices = np.zeros(wn_indptr[-1], dtype=np.int32)
        fill = indptr[:-1].copy()
        wfill = wn_indptr[:-1].copy()
        for e, link in enumerate(self.links):
            ui, vi = self._index[link.u], self._index[link.v]
            adj[fill[ui]], adj_edge[fill[ui]] = vi, e
            fill[ui] += 1
            adj[fill[vi]], adj_edge[fill[vi]] = ui, e
            fill[vi] += 1
            if link.kind is LinkKind.WIRELESS:
                wn_indices[wfill[ui]] = vi
                wfill[ui] += 1
                wn_indices[wfill[vi]] = ui
                wfill[vi] += 1
        self._indptr = indptr
        self._adj = adj
        self._adj_edge = adj_edge
        self._wn_indptr = wn_indptr
        self._wn_indices = wn_indices
        # row index of each wireless-adjacency entry, for vectorized neighbor sums
        self._wn_sources = np.repeat(np.arange(n, dtype=np.int64), np.diff(wn_indptr))

    # -- counts ---------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def n_interfacing(self) -> int:
        return sum(1 for k in self._kinds if k is NodeKind.INTERFACING)

    @property
    def n_wired_layer(self) -> int:
        return sum(1 for k in self._kinds if k.in_wired_layer)

    @property
    def n_wireless_layer(self) -> int:
        return sum(1 for k in self._kinds if k.in_wireless_layer)

    @property
    def capacities(self) -> np.ndarray:
        return self._capacities

    # -- queries --------------------------------------------------------------

    def index_of(self, node_id: int) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise UnknownNode(f"no node with id {node_id!r}") from None

    def id_of(self, index: int) -> int:
        return int(self._ids[index])

    def node(self, node_id: int) -> Node:
        return self.nodes[self.index_of(node_id)]

    def kind_of(self, node_id: int) -> NodeKind:
        return self._kinds[self.index_of(node_id)]

    def degree(self, node_id: int) -> int:
        i = self.index_of(node_id)
        return int(self._indptr[i + 1] - self._indptr[i])

    def neighbors(self, node_id: int) -> set[int]:
        i = self.index_of(node_id)
        return {int(self._ids[j]) for j in self._adj[self._indptr[i] : self._indptr[i + 1]]}

    def wireless_neighbors(self, node_id: int) -> set[int]:
        """Nodes joined to `node_id` by a wireless link only."""
        i = self.index_of(node_id)
        return {
            int(self._ids[j])
            for j in self._wn_indices[self._wn_indptr[i] : self._wn_indptr[i + 1]]
        }

    def incident_edges(self, node_id: int) -> list[int]:
        """Edge indices of all links incident to the node."""
        i = self.index_of(node_id)
        return [int(e) for e in self._adj_edge[self._indptr[i] : self._indptr[i + 1]]]

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n_wired_layer} {self.n_wireless_layer} {self.n_interfacing}"]
        for node in self.nodes:
            parts = [str(node.id), node.kind.value, repr(float(node.capacity))]
            if node.pos is not None:
                parts += [repr(float(node.pos[0])), repr(float(node.pos[1]))]
            lines.append(" ".join(parts))
        for link in self.links:
            lines.append(f"{link.u} {link.v} {link.kind.value}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())


def build_graph(nodes: Iterable[Node], links: Iterable[Link]) -> MultilayerGraph:
    """Validate node/link lists and return an indexed multilayer graph.

    Raises DuplicateLink, LayerViolation, Disconnected, NonpositiveCapacity,
    or UnknownNode when the input breaks an invariant of the model.
    """
    nodes = tuple(nodes)
    links = tuple(links)
    index: dict[int, Node] = {}
    for node in nodes:
        if node.id in index:
            raise InvalidParams(f"duplicate node id {node.id}")
        if node.capacity <= 0:
            raise NonpositiveCapacity(f"node {node.id} has capacity {node.capacity}")
        if node.kind.in_wireless_layer:
            if node.pos is None:
                raise LayerViolation(f"{node.kind.value} node {node.id} needs a position")
            x, y = node.pos
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise LayerViolation(f"node {node.id} position {node.pos} outside unit square")
        elif node.pos is not None:
            raise LayerViolation(f"wired node {node.id} must not carry a position")
        index[node.id] = node

    seen_pairs: set[tuple[int, int]] = set()
    for link in links:
        for endpoint in (link.u, link.v):
            if endpoint not in index:
                raise UnknownNode(f"link {link.u}-{link.v} references unknown node {endpoint}")
        if link.u == link.v:
            raise DuplicateLink(f"self-loop at node {link.u}")
        pair = (min(link.u, link.v), max(link.u, link.v))
        if pair in seen_pairs:
            raise DuplicateLink(f"more than one link between {pair[0]} and {pair[1]}")
        seen_pairs.add(pair)
        for endpoint in (link.u, link.v):
            kind = index[endpoint].kind
            if link.kind is LinkKind.WIRELESS and not kind.in_wireless_layer:
                raise LayerViolation(
                    f"wireless link {link.u}-{link.v} touches {kind.value} node {endpoint}"
                )
            if link.kind is LinkKind.WIRED and not kind.in_wired_layer:
                raise LayerViolation(
                    f"wired link {link.u}-{link.v} touches {kind.value} node {endpoint}"
                )

    graph = MultilayerGraph(nodes, links)
    _check_connected(graph)
    return graph


def _check_connected(g: MultilayerGraph) -> None:
    if g.n == 0:
        raise InvalidParams("graph has no nodes")
    seen = np.zeros(g.n, dtype=bool)
    queue = deque([0])
    seen[0] = True
    while queue:
        i = queue.popleft()
        for j in g._adj[g._indptr[i] : g._indptr[i + 1]]:
            if not seen[j]:
                seen[j] = True
                queue.append(int(j))
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0])
        raise Disconnected(f"node {g.id_of(missing)} unreachable from node {g.id_of(0)}")


def read_graph(source: str | TextIO) -> MultilayerGraph:
    """Parse the line-oriented text format produced by ``MultilayerGraph.to_text``."""
    if isinstance(source, str):
        text = source
    else:
        text = source.read()
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("empty graph file")
    header = lines[0].split()
    if len(header) != 3:
        raise FormatError(f"bad header {lines[0]!r}, expected 'N_W N_L N_I'")
    n_w, n_l, n_i = (int(tok) for tok in header)
    n = n_w + n_l - n_i
    if len(lines) < 1 + n:
        raise FormatError(f"expected {n} node lines, found {len(lines) - 1}")
    nodes = []
    for line in lines[1 : 1 + n]:
        parts = line.split()
        if len(parts) not in (3, 5):
            raise FormatError(f"bad node line {line!r}")
        pos = (float(parts[3]), float(parts[4])) if len(parts) == 5 else None
        try:
            kind = NodeKind(parts[1])
        except ValueError:
            raise FormatError(f"unknown node kind {parts[1]!r}") from None
        nodes.append(Node(id=int(parts[0]), kind=kind, capacity=float(parts[2]), pos=pos))
    links = []
    for line in lines[1 + n :]:
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"bad link line {line!r}")
        try:
            kind = LinkKind(parts[2])
        except ValueError:
            raise FormatError(f"unknown link kind {parts[2]!r}") from None
        links.append(Link(u=int(parts[0]), v=int(parts[1]), kind=kind))
    g = build_graph(nodes, links)
    if (g.n_wired_layer, g.n_wireless_layer, g.n_interfacing) != (n_w, n_l, n_i):
        raise FormatError(
            f"header counts {(n_w, n_l, n_i)} disagree with node tags "
            f"{(g.n_wired_layer, g.n_wireless_layer, g.n_interfacing)}"
        )
    return g


def load_graph(path) -> MultilayerGraph:
    with open(path) as fh:
        return read_graph(fh)


@dataclass(frozen=True)
class WeightState:
    """Per-link routing weights stored as integer half-unit counts.

    The effective weight of link ``e`` is ``1 + 0.5 * half_units[e]``; storing
    counts keeps every path-length comparison exact integer arithmetic.
    """

    half_units: np.ndarray

    def __post_init__(self):
        if self.half_units.dtype != np.int64:
            object.__setattr__(self, "half_units", self.half_units.astype(np.int64))
        if (self.half_units < 0).any():
            raise InvalidParams("negative half-unit count")
        self.half_units.setflags(write=False)

    @classmethod
    def initial(cls, g: MultilayerGraph) -> WeightState:
        return cls(np.zeros(len(g.links), dtype=np.int64))

    @property
    def weights(self) -> np.ndarray:
        return 1.0 + 0.5 * self.half_units

    def doubled_units(self) -> np.ndarray:
        """Integer link lengths in half-units: 2*w = 2 + half_units."""
        return 2 + self.half_units

    def bumped(self, edge_ids: Iterable[int]) -> WeightState:
        """New state with +0.5 weight on each listed edge."""
        k = self.half_units.copy()
        k.setflags(write=True)
        for e in edge_ids:
            k[e] += 1
        return WeightState(k)


def write_weights(path, g: MultilayerGraph, w: WeightState) -> None:
    """Emit links with their current weights: lines ``u v kind weight``."""
    weights = w.weights
    with open(path, "w") as fh:
        for e, link in enumerate(g.links):
            fh.write(f"{link.u} {link.v} {link.kind.value} {weights[e]!r}\n")


def load_weights(path, g: MultilayerGraph) -> WeightState:
    lookup = {
        (min(link.u, link.v), max(link.u, link.v)): e for e, link in enumerate(g.links)
    }
    k = np.full(len(g.links), -1, dtype=np.int64)
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 4:
                raise FormatError(f"bad weight line {line!r}")
            u, v, weight = int(parts[0]), int(parts[1]), float(parts[3])
            pair = (min(u, v), max(u, v))
            if pair not in lookup:
                raise FormatError(f"weight line for unknown link {u}-{v}")
            half = round(2.0 * (weight - 1.0))
            if half < 0 or abs(1.0 + 0.5 * half - weight) > 1e-12:
                raise FormatError(f"weight {weight} for link {u}-{v} is not 1 + 0.5k")
            k[lookup[pair]] = half
    if (k < 0).any():
        e = int(np.flatnonzero(k < 0)[0])
        link = g.links[e]
        raise FormatError(f"missing weight for link {link.u}-{link.v}")
    return WeightState(k)


def fig_style_graph_counts(nodes: Sequence[Node]) -> tuple[int, int, int]:
    """(N_W, N_L, N_I) computed from node tags alone."""
    n_i = sum(1 for node in nodes if node.kind is NodeKind.INTERFACING)
    n_w = sum(1 for node in nodes if node.kind.in_wired_layer)
    n_l = sum(1 for node in nodes if node.kind.in_wireless_layer)
    return n_w, n_l, n_i
