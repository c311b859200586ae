"""Undirected item graph and the coverage primitive.

Closed neighbourhoods are stored as Python ints used as bitmaps, so the
coverage of a set is the popcount of an OR, and the running union kept by
``suffix_coverages`` is a single immutable int (no shared scratch state).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from smhuim.model import ConfigurationError


class ItemGraph:
    """Undirected, unweighted, loop-free graph over item ids ``0..n-1``."""

    __slots__ = ("vertex_count", "adjacency", "_closed")

    def __init__(self, vertex_count: int, edges: Iterable[tuple] = ()):
        adj = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ConfigurationError(f"self-loop on vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ConfigurationError(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
            adj[u].add(v)
            adj[v].add(u)
        self.vertex_count = vertex_count
        self.adjacency = tuple(frozenset(a) for a in adj)
        closed = []
        for u, nbrs in enumerate(self.adjacency):
            mask = 1 << u
            for v in nbrs:
                mask |= 1 << v
            closed.append(mask)
        self._closed = tuple(closed)

    @classmethod
    def edgeless(cls, vertex_count: int) -> "ItemGraph":
        return cls(vertex_count)

    def edges(self) -> list:
        """Sorted ``(u, v)`` pairs with ``u < v``."""
        return sorted((u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def mean_degree(self) -> float:
        if not self.vertex_count:
            return 0.0
        return 2 * self.edge_count / self.vertex_count

    def closed_mask(self, u: int) -> int:
        """Bitmap of ``{u} | N(u)``."""
        if not 0 <= u < self.vertex_count:
            raise ConfigurationError(f"item {u} is not a vertex of the graph")
        return self._closed[u]

    def coverage(self, items: Iterable[int]) -> int:
        return coverage(self, items)

    def __eq__(self, other):
        return (isinstance(other, ItemGraph)
                and self.vertex_count == other.vertex_count
                and self.adjacency == other.adjacency)

    def __repr__(self):
        return f"ItemGraph(vertex_count={self.vertex_count}, edges={self.edge_count})"


def coverage(g: ItemGraph, items: Iterable[int]) -> int:
    """``|X ∪ N(X)|``; 0 for the empty set."""
    mask = 0
    for u in items:
        mask |= g.closed_mask(u)
    return mask.bit_count()


def suffix_coverages(g: ItemGraph, items: Sequence[int]) -> list:
    """``c[j] = coverage(items[j:])`` for every j, in one backward pass."""
    out = [0] * len(items)
    mask = 0
    for j in range(len(items) - 1, -1, -1):
        mask |= g.closed_mask(items[j])
        out[j] = mask.bit_count()
    return out
