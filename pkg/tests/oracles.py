"""Definition-literal reference implementations used as test oracles.

Everything here works on dense numpy arrays and explicit edge lists, and
is deliberately independent of the library's sparse data structures and
rearranged formulas.
"""

from __future__ import annotations

import math

import numpy as np


def dense_dot(a: np.ndarray, b: np.ndarray) -> float:
    """Elementwise-product sum in ascending community order."""
    total = 0.0
    for x, y in zip(a, b):
        total += float(x) * float(y)
    return total


def dense_row_objective(F: np.ndarray, adj: list[list[int]], u: int,
                        eps: float = 1e-10) -> float:
    """Literal row objective: explicit loops over neighbors and non-neighbors."""
    n = F.shape[0]
    nbrs = set(adj[u])
    total = 0.0
    for v in adj[u]:
        x = max(dense_dot(F[u], F[v]), eps)
        total += math.log(1.0 - math.exp(-x)) if x > 1e-8 else math.log(-math.expm1(-x))
    for v in range(n):
        if v != u and v not in nbrs:
            total -= dense_dot(F[u], F[v])
    return total


def dense_row_gradient_literal(F: np.ndarray, adj: list[list[int]], u: int,
                               eps: float = 1e-10) -> np.ndarray:
    """Gradient as the literal difference of the two sums (no precomputation)."""
    n, c = F.shape
    nbrs = set(adj[u])
    grad = np.zeros(c)
    for v in adj[u]:
        x = max(dense_dot(F[u], F[v]), eps)
        coef = math.exp(-x) / (1.0 - math.exp(-x)) if x > 1e-8 else 1.0 / math.expm1(x)
        grad += F[v] * coef
    for v in range(n):
        if v != u and v not in nbrs:
            grad -= F[v]
    return grad


def central_diff_gradient(F: np.ndarray, adj: list[list[int]], u: int,
                          eps: float = 1e-10, h: float = 1e-6) -> np.ndarray:
    """Central finite differences of the literal objective w.r.t. row u."""
    c = F.shape[1]
    grad = np.zeros(c)
    for j in range(c):
        plus = F.copy()
        plus[u, j] += h
        minus = F.copy()
        minus[u, j] -= h
        grad[j] = (dense_row_objective(plus, adj, u, eps)
                   - dense_row_objective(minus, adj, u, eps)) / (2.0 * h)
    return grad


def conductance_oracle(n: int, edges: list[tuple[int, int]], u: int) -> float:
    """Exhaustive cut/volume evaluation of the closed neighborhood of u."""
    inside = {u}
    for a, b in edges:
        if a == u:
            inside.add(b)
        elif b == u:
            inside.add(a)
    degree = [0] * n
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    cut = sum(1 for a, b in edges if (a in inside) != (b in inside))
    vol_s = sum(degree[v] for v in inside)
    vol_rest = sum(degree[v] for v in range(n) if v not in inside)
    bound = min(vol_s, vol_rest)
    if bound == 0:
        return 0.0
    return cut / bound


def strict_seed_oracle(n: int, edges: list[tuple[int, int]]) -> list[tuple[int, float]]:
    """Brute-force locally minimal neighborhoods under the strict rule."""
    phi = [conductance_oracle(n, edges, u) for u in range(n)]
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    seeds = [(u, phi[u]) for u in range(n) if all(phi[u] < phi[v] for v in nbrs[u])]
    seeds.sort(key=lambda pair: (pair[1], pair[0]))
    return seeds


def dense_threshold_cover(F: np.ndarray, delta: float, min_members: int,
                          order_by_strength: bool) -> list[list[int]]:
    """Literal quadratic threshold scan over a dense matrix."""
    n, c_count = F.shape
    strengths = F.sum(axis=0)
    if order_by_strength:
        order = sorted(range(c_count), key=lambda c: (-strengths[c], c))
    else:
        order = list(range(c_count))
    cover = []
    for c in order:
        members = [u for u in range(n) if F[u, c] >= delta]
        if len(members) >= min_members:
            cover.append(members)
    return cover


def column_totals_oracle(F: np.ndarray) -> list[float]:
    """Per-community totals accumulated row by row in node order."""
    totals = [0.0] * F.shape[1]
    for u in range(F.shape[0]):
        for c in range(F.shape[1]):
            totals[c] += float(F[u, c])
    return totals


def random_connected_graph(rng, n: int) -> list[tuple[int, int]]:
    """Uniform spanning-tree-plus-extras connected graph on n nodes."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a = order[i]
        b = order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    extra = rng.randrange(0, n * (n - 1) // 2 + 1)
    for _ in range(extra):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return sorted(edges)
