"""Undirected graph loading and basic statistics.

Graphs are stored as per-node sorted adjacency lists over dense internal
ids 0..n-1.  External node labels (arbitrary integers, SNAP-style edge
lists) are remapped on load and the mapping is kept so covers can be
written back in the original label space.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

from .errors import EmptyGraph, MalformedLine, NodeOutOfRange


@dataclass(frozen=True)
class NetworkStats:
    node_count: int
    edge_count: int
    # |E|/|V|: the quantity squared inside the stage-dominance estimate.
    edges_per_node: float
    # 2|E|/|V|: conventional undirected average degree, reported alongside.
    avg_degree: float


class Graph:
    """Immutable undirected simple graph.

    Invariants: adjacency is symmetric, has no self-loops or duplicates,
    every neighbor list is strictly ascending, and the list lengths sum
    to 2 * edge_count.  Instances are safe to share across threads.
    """

    __slots__ = ("node_count", "edge_count", "_adj", "_labels", "_id_of")

    def __init__(self, adjacency: list[list[int]], labels: list[int] | None = None):
        self._adj = adjacency
        self.node_count = len(adjacency)
        self.edge_count = sum(len(nbrs) for nbrs in adjacency) // 2
        self._labels = list(labels) if labels is not None else list(range(self.node_count))
        if len(self._labels) != self.node_count:
            raise ValueError("label list length must equal node count")
        self._id_of = {lab: i for i, lab in enumerate(self._labels)}

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]],
                   labels: list[int] | None = None) -> "Graph":
        """Build from internal-id pairs; self-loops and duplicates are dropped."""
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise NodeOutOfRange(f"edge ({u}, {v}) outside 0..{node_count - 1}")
            if u == v:
                continue
            seen.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v in seen:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        return cls(adj, labels)

    def neighbors(self, u: int) -> list[int]:
        """Sorted neighbor ids of u, excluding u itself.  Do not mutate."""
        if not (0 <= u < self.node_count):
            raise NodeOutOfRange(f"node {u} outside 0..{self.node_count - 1}")
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    @property
    def labels(self) -> list[int]:
        """Internal id -> external label (identity for programmatic graphs)."""
        return self._labels

    def label_of(self, u: int) -> int:
        if not (0 <= u < self.node_count):
            raise NodeOutOfRange(f"node {u} outside 0..{self.node_count - 1}")
        return self._labels[u]

    def id_of(self, label: int) -> int:
        try:
            return self._id_of[label]
        except KeyError:
            raise NodeOutOfRange(f"unknown node label {label}") from None

    def stats(self) -> NetworkStats:
        if self.node_count == 0:
            raise EmptyGraph("statistics need at least one node")
        return NetworkStats(
            node_count=self.node_count,
            edge_count=self.edge_count,
            edges_per_node=self.edge_count / self.node_count,
            avg_degree=2.0 * self.edge_count / self.node_count,
        )

    def validate(self) -> None:
        """Raise AssertionError if any structural invariant is broken."""
        total = 0
        for u, nbrs in enumerate(self._adj):
            total += len(nbrs)
            for i, v in enumerate(nbrs):
                assert 0 <= v < self.node_count, f"neighbor {v} out of range"
                assert v != u, f"self-loop at {u}"
                assert i == 0 or nbrs[i - 1] < v, f"list of {u} not strictly ascending"
                peers = self._adj[v]
                lo, hi = 0, len(peers)
                while lo < hi:
                    mid = (lo + hi) // 2
                    if peers[mid] < u:
                        lo = mid + 1
                    else:
                        hi = mid
                assert lo < len(peers) and peers[lo] == u, f"asymmetric edge ({u}, {v})"
        assert total == 2 * self.edge_count, "degree sum != 2|E|"

    def __repr__(self) -> str:
        return f"Graph(|V|={self.node_count}, |E|={self.edge_count})"


def load_edge_list(source) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    ``source`` may be a path, an open text file, or any iterable of lines.
    Lines starting with '#' and blank lines are skipped; remaining lines
    need at least two integer tokens (extra tokens are ignored).  Input is
    treated as undirected: duplicate edges collapse and self-loops drop.
    Node labels are remapped to dense ids in ascending label order, so the
    result does not depend on line order.

    Raises MalformedLine on unparseable lines and EmptyGraph when no edge
    survives cleaning.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_edge_list(fh)

    edges: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise MalformedLine(line_no, "expected two node labels")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(line_no, f"unparseable node labels {parts[0]!r} {parts[1]!r}") from None
        if a == b:
            continue
        edges.add((a, b) if a < b else (b, a))

    if not edges:
        raise EmptyGraph("no edges left after dropping comments, self-loops and duplicates")

    labels = sorted({x for edge in edges for x in edge})
    id_of = {lab: i for i, lab in enumerate(labels)}
    adj: list[list[int]] = [[] for _ in labels]
    for a, b in edges:
        u, v = id_of[a], id_of[b]
        adj[u].append(v)
        adj[v].append(u)
    for nbrs in adj:
        nbrs.sort()
    return Graph(adj, labels)


def write_edge_list(g: Graph, sink) -> None:
    """Write one "label<TAB>label" line per edge (u < v order)."""
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_edge_list(g, fh)
        return
    for u in range(g.node_count):
        lu = g.label_of(u)
        for v in g.neighbors(u):
            if u < v:
                sink.write(f"{lu}\t{g.label_of(v)}\n")
