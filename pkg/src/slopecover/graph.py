"""4-connected weighted graph over the free mega cells."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from slopecover.terrain import MegaGrid
from slopecover.weights import WeightSpec, edge_weight


class GridNode(NamedTuple):
    """A free mega cell; index is its row-major rank among free cells."""

    index: int
    row: int
    col: int


class GraphEdge(NamedTuple):
    """Undirected edge between two 4-adjacent free mega cells, stored once with a < b."""

    a: int
    b: int
    weight: float


class DisconnectedGridError(ValueError):
    """Free mega cells split into several regions; one closed tour cannot cover them."""

    def __init__(self, components: int, detail: str = ""):
        message = f"free mega cells form {components} disconnected regions (need exactly 1)"
        if detail:
            message = f"{detail}: {message}"
        super().__init__(message)
        self.components = components


@dataclass(frozen=True, eq=False)
class CoverageGraph:
    """Immutable graph over free mega cells with deterministic row-major ordering."""

    mega: MegaGrid
    spec: WeightSpec
    nodes: tuple[GridNode, ...]
    edges: tuple[GraphEdge, ...]
    node_index: np.ndarray
    pair_edges: dict[tuple[int, int], int]

    def node_at(self, row: int, col: int) -> int | None:
        """Node index of the free mega cell at (row, col), or None."""
        if 0 <= row < self.mega.rows and 0 <= col < self.mega.cols:
            i = int(self.node_index[row, col])
            if i >= 0:
                return i
        return None

    def edge_index_between(self, a: int, b: int) -> int:
        key = (a, b) if a < b else (b, a)
        try:
            return self.pair_edges[key]
        except KeyError:
            raise ValueError(f"nodes {a} and {b} are not adjacent") from None


def build_graph(mega: MegaGrid, spec: WeightSpec) -> CoverageGraph:
    """One node per free mega cell, one weighted edge per 4-adjacent free pair.

    Edges are enumerated row-major, right then down, so downstream
    tie-breaking is reproducible. Raises DisconnectedGridError when the free
    cells do not form a single region.
    """
    free = ~mega.blocked
    if not free.any():
        raise ValueError("mega grid has no free cells")
    node_index = np.full((mega.rows, mega.cols), -1, dtype=np.int32)
    nodes: list[GridNode] = []
    for r in range(mega.rows):
        for c in range(mega.cols):
            if free[r, c]:
                node_index[r, c] = len(nodes)
                nodes.append(GridNode(len(nodes), r, c))
    node_index.setflags(write=False)
    heights = mega.heights
    d = mega.spacing
    edges: list[GraphEdge] = []
    pair_edges: dict[tuple[int, int], int] = {}
    for node in nodes:
        r, c = node.row, node.col
        for nr, nc in ((r, c + 1), (r + 1, c)):
            if nr < mega.rows and nc < mega.cols and free[nr, nc]:
                j = int(node_index[nr, nc])
                pair_edges[(node.index, j)] = len(edges)
                edges.append(
                    GraphEdge(
                        node.index,
                        j,
                        edge_weight(spec, float(heights[r, c]), float(heights[nr, nc]), d),
                    )
                )
    graph = CoverageGraph(
        mega=mega,
        spec=spec,
        nodes=tuple(nodes),
        edges=tuple(edges),
        node_index=node_index,
        pair_edges=pair_edges,
    )
    components = _component_count(graph)
    if components != 1:
        raise DisconnectedGridError(components)
    return graph


def _component_count(graph: CoverageGraph) -> int:
    n = len(graph.nodes)
    seen = [False] * n
    components = 0
    for start in range(n):
        if seen[start]:
            continue
        components += 1
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            r, c = graph.nodes[u].row, graph.nodes[u].col
            for v in (
                graph.node_at(r - 1, c),
                graph.node_at(r, c + 1),
                graph.node_at(r + 1, c),
                graph.node_at(r, c - 1),
            ):
                if v is not None and not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return components


def average_slope(mega: MegaGrid) -> float:
    """Mean over adjacent free pairs of |height difference| / horizontal distance.

    Blocked pairs do not count. Raises ValueError when no adjacent free pair
    exists (fewer than two free cells, or all free cells isolated).
    """
    free = ~mega.blocked
    heights = mega.heights
    horizontal = free[:, :-1] & free[:, 1:]
    vertical = free[:-1, :] & free[1:, :]
    count = int(horizontal.sum()) + int(vertical.sum())
    if count == 0:
        raise ValueError("average slope undefined: free mega cells form no adjacent pair")
    total = float(np.abs(heights[:, 1:] - heights[:, :-1])[horizontal].sum())
    total += float(np.abs(heights[1:, :] - heights[:-1, :])[vertical].sum())
    return total / (mega.spacing * count)


def dump_edges(graph: CoverageGraph) -> str:
    """Debug edge list, one `a_row a_col b_row b_col weight` line per edge."""
    lines = []
    for e in graph.edges:
        na, nb = graph.nodes[e.a], graph.nodes[e.b]
        lines.append(f"{na.row} {na.col} {nb.row} {nb.col} {e.weight:.9g}")
    return "\n".join(lines) + ("\n" if lines else "")
