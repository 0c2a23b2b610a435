"""Planted affiliation instances: ground-truth matrices, sampled graphs,
and the average-F1 score between a detected cover and the truth.

The edge model matches the likelihood the optimizer climbs: a pair (u, v)
is connected with probability 1 - (1 - background_eps) * exp(-F_u . F_v).
Folding the background in multiplicatively keeps the planted matrix's
support identical to the truth cover.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cover_io import Cover
from .errors import EmptyCover, InvalidSpec
from .graph import Graph
from .sparse import MAX_WEIGHT, AffiliationMatrix, SparseRow


@dataclass
class PlantSpec:
    node_count: int
    community_count: int
    membership_prob: float
    weight_range: tuple[float, float] = (0.6, 1.0)
    background_eps: float = 0.0
    rng_seed: int = 0

    def validate(self) -> None:
        if self.node_count < 1 or self.community_count < 1:
            raise InvalidSpec("node and community counts must be positive")
        if not 0.0 <= self.membership_prob <= 1.0:
            raise InvalidSpec(f"membership_prob {self.membership_prob} outside [0, 1]")
        lo, hi = self.weight_range
        if not (0.0 < lo <= hi <= MAX_WEIGHT):
            raise InvalidSpec(f"weight range ({lo}, {hi}) must satisfy 0 < lo <= hi <= {MAX_WEIGHT}")
        if not 0.0 <= self.background_eps < 1.0:
            raise InvalidSpec(f"background_eps {self.background_eps} outside [0, 1)")


def _distinct_ids(rng: np.random.Generator, c_count: int, k: int) -> np.ndarray:
    """k distinct community ids, uniform over k-subsets (iid draws deduped)."""
    if k >= c_count:
        return np.arange(c_count, dtype=np.int64)
    ids = np.unique(rng.integers(0, c_count, size=k))
    while ids.size < k:
        extra = rng.integers(0, c_count, size=k - ids.size)
        ids = np.unique(np.concatenate([ids, extra]))
    return ids


def plant_cover(spec: PlantSpec) -> tuple[AffiliationMatrix, Cover]:
    """Sample a ground-truth matrix and its support cover.

    Each (node, community) membership is an independent Bernoulli draw
    with spec.membership_prob; member weights are uniform in
    spec.weight_range, so every planted weight is positive and the truth
    cover is exactly the support.  Communities nobody joined are omitted
    from the cover.  Reproducible under rng_seed.
    """
    spec.validate()
    rng = np.random.default_rng(spec.rng_seed)
    n, c_count = spec.node_count, spec.community_count
    lo, hi = spec.weight_range

    counts = rng.binomial(c_count, spec.membership_prob, size=n)
    m = AffiliationMatrix(n, c_count)
    members: list[list[int]] = [[] for _ in range(c_count)]
    for u in range(n):
        k = int(counts[u])
        if k == 0:
            continue
        ids = np.sort(_distinct_ids(rng, c_count, k))
        weights = rng.uniform(lo, hi, size=ids.size)
        m.replace_row(u, SparseRow._raw([int(c) for c in ids], [float(w) for w in weights]))
        for c in ids:
            members[int(c)].append(u)

    truth = [lst for lst in members if lst]
    return m, truth


def generate_graph(f_true: AffiliationMatrix, background_eps: float, rng_seed: int) -> Graph:
    """Sample a graph: each unordered pair (u, v) is an edge independently
    with probability 1 - (1 - background_eps) * exp(-F_u . F_v).

    Materializes the dense pair-probability matrix, so it is quadratic in
    node count; intended for desk-scale instances (up to a few thousand
    nodes).
    """
    if not 0.0 <= background_eps < 1.0:
        raise InvalidSpec(f"background_eps {background_eps} outside [0, 1)")
    n = f_true.node_count
    dense = f_true.to_dense()
    prods = dense @ dense.T
    p_edge = 1.0 - (1.0 - background_eps) * np.exp(-prods)
    rng = np.random.default_rng(rng_seed)
    draws = rng.random((n, n))
    upper = np.triu(draws < p_edge, k=1)
    us, vs = np.nonzero(upper)
    return Graph.from_edges(n, zip(us.tolist(), vs.tolist()))


def _f1(a: set[int], b: set[int]) -> float:
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return 2.0 * inter / (len(a) + len(b))


def avg_f1(detected: Cover, truth: Cover) -> float:
    """Symmetric average best-match F1 between two covers, in [0, 1].

    Averages, over each cover, the best F1 any community of the other
    cover achieves against it, then averages the two directions.
    """
    if not detected or not truth:
        raise EmptyCover("both covers must contain at least one community")
    det_sets = [set(c) for c in detected]
    tru_sets = [set(c) for c in truth]
    fwd = sum(max(_f1(t, d) for d in det_sets) for t in tru_sets) / len(tru_sets)
    bwd = sum(max(_f1(d, t) for t in tru_sets) for d in det_sets) / len(det_sets)
    return 0.5 * (fwd + bwd)
