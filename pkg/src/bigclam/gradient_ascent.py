"""Per-node projected gradient ascent on the affiliation likelihood.

The row objective for node u treats edges as noisy-OR links:

    l(F_u) = sum over neighbors v of log(1 - exp(-F_u . F_v))
             - F_u . (totals - F_u - neighbor_sum(u))

The second term is the non-edge mass rearranged through the maintained
per-community totals, so one evaluation touches only the row, its
neighbors, and the totals vector.  Inner products are clamped below at
``min_prod`` to keep both terms finite when supports are disjoint.
"""

from __future__ import annotations

import math
import random
import threading
import time
from dataclasses import dataclass

from .errors import InvalidCommunityCount
from .graph import Graph
from .sparse import MAX_WEIGHT, AffiliationMatrix, SparseRow

MIN_PRODUCT = 1e-10

# Sparse gradient: (community id, value) pairs, ids ascending, values signed.
GradVec = list[tuple[int, float]]


@dataclass
class GaConfig:
    epochs: int = 100
    step_alpha: float = 0.05
    step_beta: float = 0.3
    max_backtracks: int = 10
    min_prod: float = MIN_PRODUCT
    stop_tol: float = 0.0
    workers: int = 1
    rng_seed: int = 0
    # Debug instrumentation: assert per-row likelihood never drops.
    assert_monotone: bool = False


@dataclass
class GaStats:
    epochs_run: int
    final_likelihood: float
    seconds: float
    row_updates: int


def _log1mexp(x: float) -> float:
    """log(1 - exp(-x)) for x > 0, stable at both ends."""
    if x < 0.6931471805599453:
        return math.log(-math.expm1(-x))
    return math.log1p(-math.exp(-x))


def _grad_coef(x: float) -> float:
    """exp(-x)/(1 - exp(-x)) = 1/(exp(x) - 1), with overflow guard."""
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def _objective(row: SparseRow, nbr_rows: list[SparseRow],
               pen_vec: dict[int, float], min_prod: float) -> float:
    """Row objective for a (candidate) row given fixed surroundings.

    pen_vec holds totals[c] - current_row[c] - neighbor_sum[c]; it does
    not depend on the candidate, so one dict serves a whole line search.
    """
    acc = 0.0
    for nr in nbr_rows:
        x = row.dot(nr)
        if x < min_prod:
            x = min_prod
        acc += _log1mexp(x)
    pen = 0.0
    for c, w in row.items():
        pen += w * pen_vec.get(c, 0.0)
    return acc - pen


def _row_context(m: AffiliationMatrix, g: Graph, u: int, min_prod: float):
    """Everything update_row and the public evaluators share for node u."""
    nbr_rows = [m.rows[v] for v in g.neighbors(u)]
    row = m.rows[u]
    nbr = m.neighbor_sum(g, u)
    totals = m.totals

    support = set(row.ids)
    support.update(nbr.ids)
    for c in range(m.community_count):
        if totals[c] > 0.0:
            support.add(c)

    grad_acc: dict[int, float] = {}
    for nr in nbr_rows:
        x = row.dot(nr)
        if x < min_prod:
            x = min_prod
        coef = _grad_coef(x)
        if coef != 0.0:
            for c, w in nr.items():
                grad_acc[c] = grad_acc.get(c, 0.0) + w * coef
    support.update(grad_acc)

    pen_vec = {c: totals[c] - row.get(c) - nbr.get(c) for c in support}
    grad = [(c, grad_acc.get(c, 0.0) - pen_vec[c]) for c in sorted(support)]
    return row, nbr_rows, pen_vec, grad


def row_log_likelihood(m: AffiliationMatrix, g: Graph, u: int,
                       min_prod: float = MIN_PRODUCT) -> float:
    """Finite row objective value for node u at the current weights."""
    nbr_rows = [m.rows[v] for v in g.neighbors(u)]  # validates u
    row = m.rows[u]
    nbr = m.neighbor_sum(g, u)
    acc = 0.0
    for nr in nbr_rows:
        x = row.dot(nr)
        if x < min_prod:
            x = min_prod
        acc += _log1mexp(x)
    pen = 0.0
    for c, w in row.items():
        pen += w * (m.totals[c] - w - nbr.get(c))
    return acc - pen


def row_gradient(m: AffiliationMatrix, g: Graph, u: int,
                 min_prod: float = MIN_PRODUCT) -> GradVec:
    """Sparse gradient of the row objective over the active support.

    Support is the union of the row's own communities, its neighbors'
    communities, and every community with positive total weight.
    """
    _, _, _, grad = _row_context(m, g, u, min_prod)
    return grad


def total_log_likelihood(m: AffiliationMatrix, g: Graph,
                         min_prod: float = MIN_PRODUCT) -> float:
    return sum(row_log_likelihood(m, g, u, min_prod) for u in range(g.node_count))


def _project_step(row: SparseRow, grad: GradVec, eta: float) -> SparseRow:
    """Componentwise row + eta * grad, clamped into [0, MAX_WEIGHT], zeros dropped.

    grad's support contains the row's, so walking grad alone covers every
    component that can end up nonzero.
    """
    ids: list[int] = []
    vals: list[float] = []
    rids = row.ids
    rvals = row.vals
    i = 0
    rn = len(rids)
    for c, gv in grad:
        while i < rn and rids[i] < c:
            i += 1
        base = rvals[i] if i < rn and rids[i] == c else 0.0
        w = base + eta * gv
        if w > 0.0:
            ids.append(c)
            vals.append(w if w <= MAX_WEIGHT else MAX_WEIGHT)
    return SparseRow._raw(ids, vals)


def _update_row(m: AffiliationMatrix, g: Graph, u: int, cfg: GaConfig):
    """Backtracking ascent step for one row; returns (eta, ll_before, ll_after)."""
    row, nbr_rows, pen_vec, grad = _row_context(m, g, u, cfg.min_prod)
    gsq = 0.0
    for _, v in grad:
        gsq += v * v
    base = _objective(row, nbr_rows, pen_vec, cfg.min_prod)
    if gsq == 0.0:
        return 0.0, base, base

    eta = 1.0
    for _ in range(cfg.max_backtracks):
        cand = _project_step(row, grad, eta)
        ll = _objective(cand, nbr_rows, pen_vec, cfg.min_prod)
        if ll >= base + cfg.step_alpha * eta * gsq:
            if cfg.assert_monotone:
                assert ll >= base, f"row {u}: likelihood dropped {base} -> {ll}"
            m.replace_row(u, cand)
            return eta, base, ll
        eta *= cfg.step_beta
    return 0.0, base, base


def update_row(m: AffiliationMatrix, g: Graph, u: int, cfg: GaConfig) -> float:
    """Run one projected ascent step on row u; returns the accepted step size.

    0.0 means the row was left unchanged (zero gradient or exhausted
    backtracking).  The row likelihood never decreases.
    """
    eta, _, _ = _update_row(m, g, u, cfg)
    return eta


def run_epoch(m: AffiliationMatrix, g: Graph, cfg: GaConfig, epoch_index: int) -> float:
    """Visit every node once in a seeded permutation; returns the max
    relative row-likelihood change observed.

    With workers > 1 the permutation is split into contiguous chunks and
    each worker updates its own rows; reads of other rows and the totals
    may observe mid-epoch state, so only serial mode is deterministic.
    """
    n = g.node_count
    order = list(range(n))
    random.Random(cfg.rng_seed * 1_000_003 + epoch_index).shuffle(order)

    def sweep(nodes: list[int]) -> float:
        worst = 0.0
        for u in nodes:
            _, before, after = _update_row(m, g, u, cfg)
            rel = abs(after - before) / max(1.0, abs(before))
            if rel > worst:
                worst = rel
        return worst

    if cfg.workers <= 1:
        return sweep(order)

    chunk = (n + cfg.workers - 1) // cfg.workers
    slices = [order[i:i + chunk] for i in range(0, n, chunk)]
    deltas = [0.0] * len(slices)

    def work(i: int) -> None:
        deltas[i] = sweep(slices[i])

    threads = [threading.Thread(target=work, args=(i,)) for i in range(len(slices))]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    return max(deltas, default=0.0)


def fit(g: Graph, cfg: GaConfig, c_count: int,
        init: AffiliationMatrix | None = None) -> tuple[AffiliationMatrix, GaStats]:
    """Seed (unless an init matrix is supplied) and run up to cfg.epochs epochs.

    Stops early once an epoch's max relative change falls below
    cfg.stop_tol; the default 0 runs exactly cfg.epochs epochs.
    """
    from .seeding import init_affiliations, locally_minimal_neighborhoods

    t0 = time.perf_counter()
    if init is None:
        if c_count < 1:
            raise InvalidCommunityCount(f"need at least one community, got {c_count}")
        seeds = locally_minimal_neighborhoods(g)
        m = init_affiliations(g, seeds, c_count, cfg.rng_seed)
    else:
        m = init

    epochs_run = 0
    for epoch in range(cfg.epochs):
        delta = run_epoch(m, g, cfg, epoch)
        epochs_run += 1
        if delta < cfg.stop_tol:
            break

    stats = GaStats(
        epochs_run=epochs_run,
        final_likelihood=total_log_likelihood(m, g, cfg.min_prod),
        seconds=time.perf_counter() - t0,
        row_updates=epochs_run * g.node_count,
    )
    return m, stats
