import io
import random

import pytest

from bigclam.errors import EmptyGraph, MalformedLine, NodeOutOfRange
from bigclam.graph import Graph, load_edge_list, write_edge_list


def test_two_edge_path():
    g = load_edge_list(["0 1", "1 2"])
    assert g.node_count == 3
    assert g.edge_count == 2
    assert g.neighbors(1) == [0, 2]


def test_degenerate_input_cleaning():
    g = load_edge_list(["# comment", "5 5", "5 6", "6 5"])
    assert g.node_count == 2
    assert g.edge_count == 1
    assert g.neighbors(g.id_of(5)) == [g.id_of(6)]


def test_malformed_line_reports_line_number():
    with pytest.raises(MalformedLine) as exc:
        load_edge_list(["0 1", "1 2", "oops zzz"])
    assert exc.value.line_no == 3
    with pytest.raises(MalformedLine) as exc:
        load_edge_list(["0 1", "7"])
    assert exc.value.line_no == 2


def test_empty_graph_raised_when_nothing_survives():
    with pytest.raises(EmptyGraph):
        load_edge_list(["# only comments", "3 3"])
    with pytest.raises(EmptyGraph):
        load_edge_list([])


def test_crlf_and_extra_tokens_tolerated():
    g = load_edge_list(io.StringIO("0 1 0.75\r\n1 2 extra stuff\r\n"))
    assert g.edge_count == 2


def test_neighbors_examples():
    path = load_edge_list(["0 1", "1 2"])
    assert path.neighbors(1) == [0, 2]
    # isolated node only exists via programmatic construction
    g = Graph.from_edges(4, [(0, 1)])
    assert g.neighbors(3) == []
    # triangle, hand-enumerated
    tri = load_edge_list(["0 1", "0 2", "1 2"])
    assert tri.neighbors(0) == [1, 2]
    with pytest.raises(NodeOutOfRange):
        tri.neighbors(3)
    with pytest.raises(NodeOutOfRange):
        tri.neighbors(-1)


def test_stats():
    g = load_edge_list(["0 1", "1 2"])
    s = g.stats()
    assert s.node_count == 3 and s.edge_count == 2
    assert s.edges_per_node == pytest.approx(2 / 3)
    assert s.avg_degree == pytest.approx(4 / 3)
    with pytest.raises(EmptyGraph):
        Graph([]).stats()


def test_label_round_trip():
    g = load_edge_list(["100 7", "7 -5"])
    assert sorted(g.labels) == [-5, 7, 100]
    for u in range(g.node_count):
        assert g.id_of(g.label_of(u)) == u
    for lab in g.labels:
        assert g.label_of(g.id_of(lab)) == lab
    with pytest.raises(NodeOutOfRange):
        g.id_of(12345)


def test_shuffled_line_order_gives_identical_graph():
    rng = random.Random(7)
    lines = [f"{rng.randrange(50)} {rng.randrange(50)}" for _ in range(200)]
    lines = [ln for ln in lines if ln.split()[0] != ln.split()[1]]
    g1 = load_edge_list(lines)
    shuffled = list(lines)
    rng.shuffle(shuffled)
    g2 = load_edge_list(shuffled)
    assert g1.labels == g2.labels
    assert all(g1.neighbors(u) == g2.neighbors(u) for u in range(g1.node_count))


def test_symmetry_and_invariants_after_load():
    rng = random.Random(3)
    lines = [f"{rng.randrange(30)} {rng.randrange(30)}" for _ in range(120)]
    g = load_edge_list(lines)
    g.validate()
    # independent symmetry check
    for u in range(g.node_count):
        for v in g.neighbors(u):
            assert u in g.neighbors(v)
            assert v != u
    assert sum(len(g.neighbors(u)) for u in range(g.node_count)) == 2 * g.edge_count


def test_from_edges_range_check_and_dedup():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (2, 2)])
    assert g.edge_count == 1
    with pytest.raises(NodeOutOfRange):
        Graph.from_edges(2, [(0, 5)])


def test_write_edge_list_round_trip(tmp_path):
    g = load_edge_list(["10 20", "20 30", "10 30"])
    path = tmp_path / "edges.txt"
    write_edge_list(g, path)
    g2 = load_edge_list(path)
    assert g2.labels == g.labels
    assert all(g2.neighbors(u) == g.neighbors(u) for u in range(g.node_count))
