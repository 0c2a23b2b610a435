"""Conductance-test seeding: locally minimal neighborhoods initialize the matrix.

The closed neighborhood N(u) = {u} and u's neighbors is scored by
conductance; nodes whose neighborhood beats every neighbor's strictly
become seed communities.  Remaining communities (and any node left with
an empty row) are filled from a seeded RNG so no row starts identically
zero, which would make the gradient coefficients singular.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor

from .errors import InvalidCommunityCount
from .graph import Graph
from .sparse import AffiliationMatrix

# (node_id, conductance) pairs sorted ascending by conductance, ties by id.
SeedSet = list[tuple[int, float]]


def neighborhood_conductance(g: Graph, u: int) -> float:
    """Conductance of S = {u} + neighbors(u): cut(S, rest) / min(vol(S), vol(rest)).

    vol is the sum of degrees over a side; returns 0 when the smaller side
    has no volume (then the cut is necessarily empty too).
    """
    members = g.neighbors(u)  # validates u
    inside = set(members)
    inside.add(u)
    vol_s = 0
    cut = 0
    for w in inside:
        nbrs = g.neighbors(w)
        vol_s += len(nbrs)
        for x in nbrs:
            if x not in inside:
                cut += 1
    vol_rest = 2 * g.edge_count - vol_s
    bound = min(vol_s, vol_rest)
    if bound == 0:
        return 0.0
    return cut / bound


def locally_minimal_neighborhoods(g: Graph, workers: int = 1) -> SeedSet:
    """Nodes whose neighborhood conductance is strictly below every neighbor's.

    Scoring is read-only per node, so it fans out across ``workers``
    threads; the per-worker results merge into one sorted seed list.
    """
    n = g.node_count
    if workers > 1 and n > 1:
        phi = [0.0] * n
        chunk = (n + workers - 1) // workers

        def score(lo: int) -> None:
            for u in range(lo, min(lo + chunk, n)):
                phi[u] = neighborhood_conductance(g, u)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(score, range(0, n, chunk)))
    else:
        phi = [neighborhood_conductance(g, u) for u in range(n)]

    seeds = [
        (u, phi[u])
        for u in range(n)
        if all(phi[u] < phi[v] for v in g.neighbors(u))
    ]
    seeds.sort(key=lambda pair: (pair[1], pair[0]))
    return seeds


def init_affiliations(g: Graph, seeds: SeedSet, c_count: int, rng_seed: int) -> AffiliationMatrix:
    """Seed one community per locally minimal neighborhood, weight 1 members.

    The first min(len(seeds), c_count) seeds (lowest conductance first)
    each define a community over their closed neighborhood.  Shortfall
    communities come from closed neighborhoods of nodes drawn uniformly
    without replacement; nodes still uncovered get weight 1 in one
    uniformly drawn community.  All weights are exactly 0 or 1 and the
    result is a pure function of (g, seeds, c_count, rng_seed).
    """
    if c_count < 1:
        raise InvalidCommunityCount(f"need at least one community, got {c_count}")
    n = g.node_count
    m = AffiliationMatrix(n, c_count)
    rng = random.Random(rng_seed)

    centers = [u for u, _ in seeds[:c_count]]
    if len(centers) < c_count:
        used = set(centers)
        pool = [u for u in range(n) if u not in used]
        rng.shuffle(pool)
        while len(centers) < c_count and pool:
            centers.append(pool.pop())
        while len(centers) < c_count:  # more communities than nodes: reuse
            centers.append(rng.randrange(n))

    for c, center in enumerate(centers):
        m.set(center, c, 1.0)
        for member in g.neighbors(center):
            m.set(member, c, 1.0)

    for u in range(n):
        if not m.rows[u].ids:
            m.set(u, rng.randrange(c_count), 1.0)
    return m
