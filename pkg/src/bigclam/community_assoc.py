"""Threshold the fitted matrix into a cover, serially or across threads.

The faithful mode reproduces the quadratic scan: for every community and
every node it probes the node's row for that community, so the probe
counter always lands on node_count * community_count.  The scan kernel is
JIT-compiled and releases the GIL, which is what lets plain Python
threads actually run the per-community scans concurrently.

In the parallel variant the matrix snapshot and the threshold are shared
read-only, each community's member list stays private to the thread that
scans it, and the single mutation of shared state is appending a finished
list to the output cover, guarded by one lock.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DegenerateGraph, InvalidArgument
from .sparse import AffiliationMatrix

Cover = list[list[int]]


@dataclass
class CaOptions:
    min_members: int = 3
    order_by_strength: bool = True
    workers: int = 1


@dataclass
class ProbeCounter:
    """Membership probes performed; merged per worker at stage end."""
    probes: int = 0

    def add(self, n: int) -> None:
        self.probes += n


def affiliation_threshold(v_count: int, e_count: int) -> float:
    """Minimum weight for membership: sqrt(-log(1 - eps)) where eps is the
    background probability 2|E| / (|V| (|V|-1)) of a random edge.
    """
    if v_count < 2 or e_count < 1:
        raise DegenerateGraph(f"need |V| >= 2 and |E| >= 1, got {v_count}, {e_count}")
    eps = 2.0 * e_count / (v_count * (v_count - 1.0))
    if eps >= 1.0:
        raise DegenerateGraph(f"background edge probability {eps} >= 1")
    return math.sqrt(-math.log1p(-eps))


@njit(cache=True, nogil=True)
def _scan_community(indptr, indices, data, c, delta, out):  # pragma: no cover
    """Probe every node's row for community c; fills out, returns count.

    One binary search per node = one probe, so a full call is exactly
    node_count probes.  Members land in out[:count] in ascending order.
    """
    n = indptr.size - 1
    k = 0
    for u in range(n):
        lo = indptr[u]
        hi = indptr[u + 1]
        while lo < hi:
            mid = (lo + hi) // 2
            if indices[mid] < c:
                lo = mid + 1
            else:
                hi = mid
        if lo < indptr[u + 1] and indices[lo] == c and data[lo] >= delta:
            out[k] = u
            k += 1
    return k


def community_strengths(m: AffiliationMatrix) -> list[float]:
    """Total affiliation weight per community (the maintained totals)."""
    return list(m.totals)


def _community_order(m: AffiliationMatrix, opts: CaOptions) -> list[int]:
    if not opts.order_by_strength:
        return list(range(m.community_count))
    totals = m.totals
    return sorted(range(m.community_count), key=lambda c: (-totals[c], c))


def extract_serial(m: AffiliationMatrix, delta: float,
                   opts: CaOptions | None = None,
                   counter: ProbeCounter | None = None) -> Cover:
    """Faithful quadratic scan, one community at a time.

    Communities are visited in descending total-strength order (ties by
    ascending id) and kept only with at least min_members members; member
    lists are ascending node ids.
    """
    if delta <= 0.0:
        raise InvalidArgument(f"threshold must be positive, got {delta}")
    opts = opts or CaOptions()
    order = _community_order(m, opts)
    indptr, indices, data = m.to_csr()
    n = m.node_count
    out = np.empty(n, dtype=np.int64)
    cover: Cover = []
    probes = 0
    for c in order:
        k = _scan_community(indptr, indices, data, c, delta, out)
        probes += n
        if k >= opts.min_members:
            cover.append(out[:k].tolist())
    if counter is not None:
        counter.add(probes)
    return cover


def extract_parallel(m: AffiliationMatrix, delta: float,
                     opts: CaOptions | None = None,
                     counter: ProbeCounter | None = None) -> Cover:
    """Same scan with the community loop spread over opts.workers threads.

    The outer append order depends on thread completion, so outputs match
    the serial cover only after canonicalization; with a single worker the
    output is identical to extract_serial, order included.
    """
    if delta <= 0.0:
        raise InvalidArgument(f"threshold must be positive, got {delta}")
    opts = opts or CaOptions()
    workers = max(1, opts.workers)
    order = _community_order(m, opts)
    indptr, indices, data = m.to_csr()
    n = m.node_count

    cover: Cover = []
    lock = threading.Lock()
    pending = iter(order)  # next() is GIL-atomic: each community claimed once
    sentinel = -1

    def work() -> None:
        buf = np.empty(n, dtype=np.int64)
        local_probes = 0
        while True:
            c = next(pending, sentinel)
            if c == sentinel:
                break
            k = _scan_community(indptr, indices, data, c, delta, buf)
            local_probes += n
            if k >= opts.min_members:
                members = buf[:k].tolist()
                with lock:  # the one critical operation on shared state
                    cover.append(members)
        if counter is not None:
            with lock:
                counter.add(local_probes)

    threads = [threading.Thread(target=work) for _ in range(workers)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    return cover


def extract_transposed(m: AffiliationMatrix, delta: float,
                       opts: CaOptions | None = None,
                       counter: ProbeCounter | None = None) -> Cover:
    """Fast path: one pass over the stored entries builds a column view.

    Examines each nonzero exactly once (the counter records nnz probes
    instead of the quadratic count) and yields the same cover as
    extract_serial, order included.
    """
    if delta <= 0.0:
        raise InvalidArgument(f"threshold must be positive, got {delta}")
    opts = opts or CaOptions()
    indptr, indices, data = m.to_csr()
    n = m.node_count
    keep = data >= delta
    row_of = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    cols = indices[keep]
    rows = row_of[keep]
    # Stable sort by community keeps rows ascending within each community.
    perm = np.argsort(cols, kind="stable")
    cols = cols[perm]
    rows = rows[perm]
    starts = np.searchsorted(cols, np.arange(m.community_count + 1))
    cover: Cover = []
    for c in _community_order(m, opts):
        members = rows[starts[c]:starts[c + 1]]
        if members.size >= opts.min_members:
            cover.append(members.tolist())
    if counter is not None:
        counter.add(int(indices.size))
    return cover
