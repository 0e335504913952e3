"""Spanning trees over the coverage graph: weighted MST and a weight-blind baseline."""

from __future__ import annotations

from dataclasses import dataclass

from slopecover.graph import CoverageGraph, GraphEdge, GridNode
from slopecover.weights import WeightSpec, edge_weight


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """Acyclic edge subset connecting all nodes; edges kept in canonical graph order."""

    graph: CoverageGraph
    edges: tuple[GraphEdge, ...]
    root: GridNode


def minimum_spanning_tree(g: CoverageGraph) -> SpanningTree:
    """Kruskal with union-find.

    The stable sort over the graph's canonical edge list breaks weight ties
    by edge index, so equal-weight graphs always yield the same tree.
    """
    n = len(g.nodes)
    order = sorted(range(len(g.edges)), key=lambda i: g.edges[i].weight)
    uf = _UnionFind(n)
    chosen: list[int] = []
    for i in order:
        e = g.edges[i]
        if uf.union(e.a, e.b):
            chosen.append(i)
            if len(chosen) == n - 1:
                break
    chosen.sort()
    return SpanningTree(graph=g, edges=tuple(g.edges[i] for i in chosen), root=g.nodes[0])


def classical_spanning_tree(g: CoverageGraph) -> SpanningTree:
    """Weight-blind spanning tree: depth-first from the root, neighbours tried
    up, right, down, left. Deterministic representative of the unit-weight
    approach, where any spanning tree is minimal."""
    visited = [False] * len(g.nodes)
    chosen: list[int] = []
    stack: list[tuple[int, int]] = [(0, -1)]
    while stack:
        u, via = stack.pop()
        if visited[u]:
            continue
        visited[u] = True
        if via >= 0:
            chosen.append(via)
        r, c = g.nodes[u].row, g.nodes[u].col
        # pushed reversed so pops explore up, right, down, left
        for dr, dc in ((0, -1), (1, 0), (0, 1), (-1, 0)):
            v = g.node_at(r + dr, c + dc)
            if v is not None and not visited[v]:
                stack.append((v, g.edge_index_between(u, v)))
    chosen.sort()
    return SpanningTree(graph=g, edges=tuple(g.edges[i] for i in chosen), root=g.nodes[0])


def tree_weight(tree: SpanningTree, spec: WeightSpec) -> float:
    """Total edge cost re-evaluated under spec.

    spec may differ from the spec the tree was built with; the baseline tree
    is built weight-blind but costed with slope-aware weights.
    """
    mega = tree.graph.mega
    heights = mega.heights
    total = 0.0
    for e in tree.edges:
        na = tree.graph.nodes[e.a]
        nb = tree.graph.nodes[e.b]
        total += edge_weight(
            spec, float(heights[na.row, na.col]), float(heights[nb.row, nb.col]), mega.spacing
        )
    return total
