"""Undirected simple graphs and their dense matrix forms.

Matrices are plain ``numpy`` arrays. Adjacency, degree and Laplacian are
built in integer arithmetic so that ``laplacian(g) @ ones == 0`` holds
exactly; callers convert to float at the spectral boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable

import numpy as np


def _normalize_edges(n: int, edges: Iterable) -> frozenset:
    out = set()
    for e in edges:
        i, j = (int(v) for v in e)
        if i == j:
            raise ValueError(f"self-loop on node {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) has an endpoint outside [0, {n})")
        out.add((i, j) if i < j else (j, i))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on nodes ``0 .. n-1``.

    Edges are stored as a frozenset of ``(i, j)`` pairs with ``i < j``;
    any iterable of pairs is accepted and normalized, duplicates collapse.
    ``label`` and ``features`` are carried along untouched by every
    augmentation.
    """

    n: int
    edges: frozenset = frozenset()
    label: int | None = None
    features: Any = field(default=None, repr=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"node count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", _normalize_edges(self.n, self.edges))
        if self.label is not None:
            object.__setattr__(self, "label", int(self.label))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.label == other.label
            and self.features == other.features
        )

    def __hash__(self):
        return hash((self.n, self.edges, self.label))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(a)) for a in adj)

    def has_edge(self, i: int, j: int) -> bool:
        return ((i, j) if i < j else (j, i)) in self.edges

    def with_edges(self, edges: Iterable) -> "Graph":
        """Same node count, label and features; new edge set."""
        return Graph(self.n, edges, self.label, self.features)


def adjacency(g: Graph) -> np.ndarray:
    """Binary symmetric adjacency matrix (int64, zero diagonal)."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    if g.edges:
        idx = np.array(sorted(g.edges), dtype=np.intp)
        a[idx[:, 0], idx[:, 1]] = 1
        a[idx[:, 1], idx[:, 0]] = 1
    return a


def degrees(g: Graph) -> np.ndarray:
    d = np.zeros(g.n, dtype=np.int64)
    for i, j in g.edges:
        d[i] += 1
        d[j] += 1
    return d


def degree_matrix(g: Graph) -> np.ndarray:
    return np.diag(degrees(g))


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian ``D - A`` as an int64 array."""
    a = adjacency(g)
    return np.diag(a.sum(axis=1)) - a


def max_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return int(degrees(g).max())


def symmetrize(m: np.ndarray) -> np.ndarray:
    """Average ``m`` with its transpose; the result is exactly symmetric."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return (m + m.T) / 2.0


# Small named graphs used throughout the tests and demos.

def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, k) for k in range(1, leaves + 1)])


TOY_EDGES = (
    (0, 4), (3, 4), (4, 5), (4, 7), (0, 1),
    (2, 3), (0, 3), (5, 6), (6, 7), (1, 2),
)
# single-edge additions probed on the toy graph, in the order reported
TOY_ADDITIONS = (
    (3, 5), (3, 7), (1, 6), (2, 6), (0, 2),
    (1, 3), (1, 4), (2, 4), (4, 6), (5, 7),
)


def toy_graph() -> Graph:
    """The 8-node, 10-edge graph used for the edge-flip sensitivity study.

    Nodes 0-3 form a 4-cycle attached to hub 4, which closes a second
    4-cycle through 5, 6, 7.
    """
    return Graph(8, TOY_EDGES)
