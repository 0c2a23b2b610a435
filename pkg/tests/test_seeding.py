import io
import random

import pytest

from bigclam.errors import InvalidCommunityCount
from bigclam.graph import Graph, load_edge_list
from bigclam.seeding import (init_affiliations, locally_minimal_neighborhoods,
                             neighborhood_conductance)
from bigclam.sparse import write_snapshot
from oracles import conductance_oracle, random_connected_graph, strict_seed_oracle

PATH = ["0 1", "1 2"]


def test_conductance_path_examples():
    g = load_edge_list(PATH)
    # u=1: S is the whole graph, complement has zero volume
    assert neighborhood_conductance(g, 1) == 0.0
    # u=0: S={0,1}, cut=1, vol(S)=3, vol(rest)=1 -> 1/1
    assert neighborhood_conductance(g, 0) == 1.0


def test_conductance_disjoint_triangles():
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    g = Graph.from_edges(6, edges)
    for u in range(6):
        assert neighborhood_conductance(g, u) == 0.0


def test_conductance_matches_exhaustive_oracle_on_random_graphs():
    rng = random.Random(42)
    for _ in range(100):
        n = rng.randrange(2, 9)
        edges = random_connected_graph(rng, n)
        g = Graph.from_edges(n, edges)
        for u in range(n):
            assert neighborhood_conductance(g, u) == conductance_oracle(n, edges, u)


def test_locally_minimal_path():
    g = load_edge_list(PATH)
    assert locally_minimal_neighborhoods(g) == [(1, 0.0)]


def test_locally_minimal_k4_is_empty():
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    g = Graph.from_edges(4, edges)
    # every closed neighborhood is the whole graph: all conductances tie at 0,
    # so the strict comparison admits no seed
    assert locally_minimal_neighborhoods(g) == []


def test_locally_minimal_barbell_matches_brute_force():
    # two triangles joined by one edge; conductances tie across each triangle,
    # so the strict rule yields whatever the brute-force oracle says
    edges = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
    g = Graph.from_edges(6, edges)
    assert locally_minimal_neighborhoods(g) == strict_seed_oracle(6, edges)


def test_locally_minimal_triangle_with_pendant():
    # triangle {0,1,2} plus pendant 3 on node 2: only N(2) is strictly minimal
    edges = [(0, 1), (0, 2), (1, 2), (2, 3)]
    g = Graph.from_edges(4, edges)
    assert locally_minimal_neighborhoods(g) == [(2, 0.0)]
    assert locally_minimal_neighborhoods(g) == strict_seed_oracle(4, edges)


def test_locally_minimal_random_graphs_match_oracle():
    rng = random.Random(123)
    for _ in range(50):
        n = rng.randrange(2, 10)
        edges = random_connected_graph(rng, n)
        g = Graph.from_edges(n, edges)
        assert locally_minimal_neighborhoods(g) == strict_seed_oracle(n, edges)


def test_locally_minimal_threaded_matches_serial():
    rng = random.Random(9)
    edges = random_connected_graph(rng, 40)
    g = Graph.from_edges(40, edges)
    assert locally_minimal_neighborhoods(g, workers=4) == locally_minimal_neighborhoods(g)


def snapshot_bytes(m):
    buf = io.StringIO()
    write_snapshot(m, buf)
    return buf.getvalue()


def test_init_path_single_community():
    g = load_edge_list(PATH)
    seeds = locally_minimal_neighborhoods(g)
    m = init_affiliations(g, seeds, 1, rng_seed=99)
    assert [m.get(u, 0) for u in range(3)] == [1.0, 1.0, 1.0]


def test_init_deterministic_when_rng_unused():
    g = load_edge_list(PATH)
    seeds = locally_minimal_neighborhoods(g)
    # one seed covering every node: RNG is never consulted
    a = init_affiliations(g, seeds, 1, rng_seed=1)
    b = init_affiliations(g, seeds, 1, rng_seed=2)
    assert snapshot_bytes(a) == snapshot_bytes(b)


def test_init_reproducible_with_fill():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
    g = Graph.from_edges(6, edges)
    seeds = locally_minimal_neighborhoods(g)
    a = init_affiliations(g, seeds, 3, rng_seed=7)
    b = init_affiliations(g, seeds, 3, rng_seed=7)
    assert snapshot_bytes(a) == snapshot_bytes(b)
    c = init_affiliations(g, seeds, 3, rng_seed=8)
    assert snapshot_bytes(a) != snapshot_bytes(c) or True  # different seed may coincide


def test_init_coverage_properties():
    rng = random.Random(17)
    for trial in range(20):
        n = rng.randrange(4, 15)
        edges = random_connected_graph(rng, n)
        g = Graph.from_edges(n, edges)
        seeds = locally_minimal_neighborhoods(g)
        c_count = rng.randrange(1, n + 1)
        m = init_affiliations(g, seeds, c_count, rng_seed=trial)
        # every node affiliated at least once, all weights exactly 1
        for u in range(n):
            assert len(m.rows[u]) >= 1
            assert all(w == 1.0 for _, w in m.rows[u].items())
        # every community non-empty when enough nodes exist
        populated = sum(1 for c in range(c_count) if m.totals[c] > 0)
        assert populated == c_count


def test_init_rejects_bad_community_count():
    g = load_edge_list(PATH)
    with pytest.raises(InvalidCommunityCount):
        init_affiliations(g, [], 0, rng_seed=0)
