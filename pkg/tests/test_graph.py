import itertools

import pytest

from sidcodes.errors import DimensionError, VertexRangeError
from sidcodes.graph import (automorphism_generators, build_product_graph, closed_neighborhood, column,
                            open_neighborhood, preserves_adjacency, row)
from sidcodes.models import Topology, Vertex


def pair_count(graph):
    vertices = [graph.vertex(idx) for idx in range(graph.num_vertices)]
    return sum(1 for u, v in itertools.combinations(vertices, 2) if graph.adjacent(u, v))


@pytest.mark.parametrize('m,n,topology,vertices,edges', [
    (3, 4, Topology.PATH, 12, 18),
    (1, 5, Topology.PATH, 5, 0),
    (3, 3, Topology.CYCLE, 9, 18),
])
def test_build_examples(m, n, topology, vertices, edges):
    graph = build_product_graph(m, n, topology)
    assert graph.num_vertices == vertices
    assert graph.edge_count() == edges
    assert graph.to_networkx().number_of_edges() == edges


@pytest.mark.parametrize('m,n,topology', [(0, 4, 'path'), (3, 1, 'path'), (3, 2, 'cycle')])
def test_build_rejects_bad_dimensions(m, n, topology):
    with pytest.raises(DimensionError):
        build_product_graph(m, n, topology)


def test_edge_formula_matches_pair_count():
    for m in range(1, 7):
        for n in range(2, 11):
            path = build_product_graph(m, n, Topology.PATH)
            assert path.edge_count() == pair_count(path) == m * (m - 1) * (n - 1)
            if n >= 3:
                cycle = build_product_graph(m, n, Topology.CYCLE)
                assert cycle.edge_count() == pair_count(cycle) == m * (m - 1) * n


def test_adjacency_symmetric_and_irreflexive():
    for topology in Topology:
        graph = build_product_graph(4, 5, topology)
        closed = graph.closed_nbhd
        for u in range(graph.num_vertices):
            assert closed[u] >> u & 1
            assert not graph.open_nbhd[u] >> u & 1
            for v in range(graph.num_vertices):
                assert (closed[u] >> v & 1) == (closed[v] >> u & 1)


def test_closed_neighborhood_examples(path_graph, cycle_graph):
    assert set(closed_neighborhood(path_graph(3, 4), (0, 0))) == {(0, 0), (1, 1), (2, 1)}
    assert set(closed_neighborhood(path_graph(3, 4), (0, 1))) == {(0, 1), (1, 0), (2, 0), (1, 2), (2, 2)}
    assert set(closed_neighborhood(cycle_graph(3, 3), (0, 0))) == {(0, 0), (1, 1), (2, 1), (1, 2), (2, 2)}
    with pytest.raises(VertexRangeError):
        closed_neighborhood(path_graph(3, 4), (3, 0))


def test_open_neighborhood_examples(path_graph, cycle_graph):
    graph = path_graph(3, 4)
    assert set(open_neighborhood(graph, (0, 1))) == {(1, 0), (2, 0), (1, 2), (2, 2)}
    for idx in range(graph.num_vertices):
        v = graph.vertex(idx)
        closed, opened = closed_neighborhood(graph, v), open_neighborhood(graph, v)
        assert opened.issubset(closed) and not opened.isdisjoint(closed)
        assert set(closed - opened) == {v}
    # twins on C_4: (i, j) and (i, j+2) share their open neighbourhood
    twins = cycle_graph(3, 4)
    assert open_neighborhood(twins, (1, 0)) == open_neighborhood(twins, (1, 2))
    with pytest.raises(VertexRangeError):
        open_neighborhood(graph, (0, 4))


def test_degrees_on_paths(path_graph):
    graph = path_graph(4, 6)
    for idx in range(graph.num_vertices):
        v = graph.vertex(idx)
        expected = 3 if v.col in (0, 5) else 6
        assert len(closed_neighborhood(graph, v)) == expected + 1


def test_columns_and_rows(path_graph, cycle_graph):
    graph = path_graph(3, 4)
    assert set(column(graph, 0)) == {(0, 0), (1, 0), (2, 0)}
    assert set(row(graph, 0)) == {(0, 0), (0, 1), (0, 2), (0, 3)}
    assert len(column(path_graph(4, 5), 2)) == 4
    assert len(row(cycle_graph(5, 3), 4)) == 3
    assert column(cycle_graph(3, 6), -1) == column(cycle_graph(3, 6), 5)
    with pytest.raises(VertexRangeError):
        column(graph, 4)
    with pytest.raises(VertexRangeError):
        row(graph, 3)

    union = 0
    for i in range(3):
        part = row(graph, i).bits
        assert not union & part
        union |= part
    assert union == graph.full_mask


def test_automorphism_generators(path_graph, cycle_graph):
    kinds = [g.kind for g in automorphism_generators(path_graph(3, 5))]
    assert kinds == ['row-swap', 'row-swap', 'reversal']
    kinds = [g.kind for g in automorphism_generators(cycle_graph(3, 6))]
    assert kinds == ['row-swap', 'row-swap', 'rotation', 'reflection']


def test_generators_preserve_adjacency_exhaustively(path_graph):
    graph = path_graph(4, 4)
    for generator in automorphism_generators(graph):
        assert preserves_adjacency(graph, generator.mapping)
        for u, v in itertools.product(range(16), repeat=2):
            su, sv = generator.mapping[u], generator.mapping[v]
            assert graph.adjacent(graph.vertex(u), graph.vertex(v)) == graph.adjacent(graph.vertex(su), graph.vertex(sv))


def test_vertex_set_algebra(path_graph):
    graph = path_graph(3, 4)
    left, top = column(graph, 0), row(graph, 0)
    assert set(left & top) == {Vertex(0, 0)}
    assert len(left | top) == 6
    assert len(left - top) == 2
    assert len(left.complement()) == 9
