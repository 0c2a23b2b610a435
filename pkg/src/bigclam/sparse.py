"""Sparse non-negative affiliation rows and the row-major affiliation matrix.

A row stores (community id, weight) pairs as two parallel ascending lists.
The matrix keeps a dense per-community total of all row weights so the
optimizer can form "everyone except me and my neighbors" sums without
touching every row.
"""

from __future__ import annotations

import os
import threading
from bisect import bisect_left
from typing import Iterable, Iterator

import numpy as np

from .errors import IndexOutOfRange, MalformedLine, NodeOutOfRange
from .graph import Graph

# Upper clamp on any stored affiliation weight; bounds the exp() arguments
# in the likelihood.  Enforced at matrix mutation points.
MAX_WEIGHT = 1000.0


class SparseRow:
    """Weights over community ids, ids strictly ascending, zeros never stored.

    Rows resident in an AffiliationMatrix are additionally capped at
    MAX_WEIGHT (the matrix clamps on insertion).  Free-standing rows such
    as neighbor sums may legitimately exceed the cap.
    """

    __slots__ = ("ids", "vals")

    def __init__(self, entries: Iterable[tuple[int, float]] = ()):
        ids: list[int] = []
        vals: list[float] = []
        last = -1
        for c, w in entries:
            c = int(c)
            if c <= last:
                raise ValueError("community ids must be strictly ascending")
            if w < 0.0:
                raise ValueError(f"negative weight {w} for community {c}")
            last = c
            if w == 0.0:
                continue
            ids.append(c)
            vals.append(float(w))
        self.ids = ids
        self.vals = vals

    @classmethod
    def _raw(cls, ids: list[int], vals: list[float]) -> "SparseRow":
        # Internal fast path: caller guarantees the invariants.
        row = cls.__new__(cls)
        row.ids = ids
        row.vals = vals
        return row

    def dot(self, other: "SparseRow") -> float:
        """Inner product; iterates the shorter row and probes the longer."""
        a, b = (self, other) if len(self.ids) <= len(other.ids) else (other, self)
        if not a.ids or not b.ids:
            return 0.0
        bids = b.ids
        bvals = b.vals
        n = len(bids)
        total = 0.0
        for c, w in zip(a.ids, a.vals):
            j = bisect_left(bids, c)
            if j < n and bids[j] == c:
                total += w * bvals[j]
        return total

    def get(self, c: int) -> float:
        j = bisect_left(self.ids, c)
        if j < len(self.ids) and self.ids[j] == c:
            return self.vals[j]
        return 0.0

    def set(self, c: int, w: float) -> float:
        """In-place insert/replace/delete; returns the previous weight."""
        j = bisect_left(self.ids, c)
        present = j < len(self.ids) and self.ids[j] == c
        old = self.vals[j] if present else 0.0
        if w == 0.0:
            if present:
                del self.ids[j]
                del self.vals[j]
        elif present:
            self.vals[j] = w
        else:
            self.ids.insert(j, c)
            self.vals.insert(j, w)
        return old

    def items(self) -> Iterator[tuple[int, float]]:
        return zip(self.ids, self.vals)

    def copy(self) -> "SparseRow":
        return SparseRow._raw(list(self.ids), list(self.vals))

    def __len__(self) -> int:
        return len(self.ids)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseRow) and self.ids == other.ids and self.vals == other.vals

    def __repr__(self) -> str:
        inner = ", ".join(f"{c}: {w:g}" for c, w in self.items())
        return f"SparseRow({{{inner}}})"


class AffiliationMatrix:
    """Row-sparse affiliation weights with maintained per-community totals.

    ``totals[c]`` tracks the column sum over all rows, incrementally
    updated on every mutation and exactly restorable via
    ``recompute_totals``.

    Concurrency contract: mutations (set, replace_row) run under the
    internal lock, so writers are mutually exclusive and totals updates
    are atomic.  ``replace_row`` installs the new row with a single
    reference swap, so lock-free readers observe either the old or the
    new complete row; in-place ``set`` must not race with readers of the
    same row.
    """

    def __init__(self, node_count: int, community_count: int):
        if node_count < 0 or community_count < 0:
            raise ValueError("counts must be non-negative")
        self.rows: list[SparseRow] = [SparseRow() for _ in range(node_count)]
        self.community_count = community_count
        self.totals: list[float] = [0.0] * community_count
        self._lock = threading.Lock()

    @property
    def node_count(self) -> int:
        return len(self.rows)

    def _check(self, u: int, c: int | None = None) -> None:
        if not (0 <= u < len(self.rows)):
            raise IndexOutOfRange(f"row {u} outside 0..{len(self.rows) - 1}")
        if c is not None and not (0 <= c < self.community_count):
            raise IndexOutOfRange(f"community {c} outside 0..{self.community_count - 1}")

    def get(self, u: int, c: int) -> float:
        self._check(u, c)
        return self.rows[u].get(c)

    def set(self, u: int, c: int, w: float) -> None:
        """Store weight w (0 deletes, values above MAX_WEIGHT clamp)."""
        self._check(u, c)
        if w < 0.0:
            raise ValueError(f"negative weight {w}")
        w = min(float(w), MAX_WEIGHT)
        with self._lock:
            old = self.rows[u].set(c, w)
            self.totals[c] += w - old

    def replace_row(self, u: int, new_row: SparseRow) -> None:
        """Swap in a copy of new_row atomically, adjusting totals per community."""
        self._check(u)
        for c in new_row.ids:
            if not (0 <= c < self.community_count):
                raise IndexOutOfRange(f"community {c} outside 0..{self.community_count - 1}")
        clamped = SparseRow._raw(list(new_row.ids), [min(w, MAX_WEIGHT) for w in new_row.vals])
        with self._lock:
            old = self.rows[u]
            for c, w in old.items():
                self.totals[c] -= w
            for c, w in clamped.items():
                self.totals[c] += w
            self.rows[u] = clamped

    def neighbor_sum(self, g: Graph, u: int) -> SparseRow:
        """Sum of the rows of u's neighbors (support = union of theirs)."""
        if g.node_count != len(self.rows):
            raise NodeOutOfRange(f"graph has {g.node_count} nodes, matrix has {len(self.rows)} rows")
        acc: dict[int, float] = {}
        for v in g.neighbors(u):
            row = self.rows[v]
            for c, w in zip(row.ids, row.vals):
                acc[c] = acc.get(c, 0.0) + w
        ids = sorted(acc)
        return SparseRow._raw(ids, [acc[c] for c in ids])

    def recompute_totals(self) -> None:
        """From-scratch rebuild of totals; escape hatch for drift checks."""
        fresh = [0.0] * self.community_count
        for row in self.rows:
            for c, w in zip(row.ids, row.vals):
                fresh[c] += w
        with self._lock:
            self.totals = fresh

    def support_sizes(self) -> list[int]:
        return [len(row.ids) for row in self.rows]

    def to_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Snapshot as (indptr, indices, data) arrays for the scan kernels."""
        rows = self.rows
        lens = np.fromiter((len(r.ids) for r in rows), dtype=np.int64, count=len(rows))
        indptr = np.zeros(len(rows) + 1, dtype=np.int64)
        np.cumsum(lens, out=indptr[1:])
        nnz = int(indptr[-1])
        indices = np.fromiter((c for r in rows for c in r.ids), dtype=np.int64, count=nnz)
        data = np.fromiter((w for r in rows for w in r.vals), dtype=np.float64, count=nnz)
        return indptr, indices, data

    @classmethod
    def from_dense(cls, arr) -> "AffiliationMatrix":
        """Build from a dense (node x community) array; zeros are skipped."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        m = cls(arr.shape[0], arr.shape[1])
        for u in range(arr.shape[0]):
            ids = np.flatnonzero(arr[u])
            if ids.size:
                m.replace_row(u, SparseRow._raw([int(c) for c in ids],
                                                [float(arr[u, c]) for c in ids]))
        return m

    def to_dense(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.community_count))
        for u, row in enumerate(self.rows):
            for c, w in row.items():
                out[u, c] = w
        return out

    def __repr__(self) -> str:
        nnz = sum(len(r.ids) for r in self.rows)
        return f"AffiliationMatrix({len(self.rows)} x {self.community_count}, nnz={nnz})"


def write_snapshot(m: AffiliationMatrix, sink) -> None:
    """Text snapshot: header line, then "node<TAB>community:weight..." per node.

    Weights use repr() so a read-back round-trips bit-exactly.
    """
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            write_snapshot(m, fh)
        return
    sink.write(f"# communities\t{m.community_count}\n")
    for u, row in enumerate(m.rows):
        parts = [str(u)] + [f"{c}:{w!r}" for c, w in row.items()]
        sink.write("\t".join(parts) + "\n")


def read_snapshot(source) -> AffiliationMatrix:
    """Inverse of write_snapshot."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_snapshot(fh)
    community_count = None
    parsed: list[tuple[int, list[tuple[int, float]]]] = []
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "communities":
                community_count = int(parts[1])
            continue
        parts = line.split("\t")
        try:
            u = int(parts[0])
            entries = []
            for tok in parts[1:]:
                c_str, w_str = tok.split(":", 1)
                entries.append((int(c_str), float(w_str)))
        except (ValueError, IndexError):
            raise MalformedLine(line_no, f"bad snapshot line {line!r}") from None
        parsed.append((u, entries))
    if not parsed:
        return AffiliationMatrix(0, community_count or 0)
    n = max(u for u, _ in parsed) + 1
    if community_count is None:
        community_count = 1 + max((c for _, es in parsed for c, _ in es), default=-1)
    m = AffiliationMatrix(n, community_count)
    for u, entries in parsed:
        m.replace_row(u, SparseRow(entries))
    return m
