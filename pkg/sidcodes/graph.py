"""Direct products K_m x P_n and K_m x C_n.

Vertex (i, j) pairs row i (a vertex of K_m) with column j (a vertex of the
path or cycle). Two vertices are adjacent when their rows differ and their
columns are adjacent in the second factor.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

import networkx as nx

from sidcodes.errors import DimensionError, VertexRangeError
from sidcodes.models import Topology, Vertex, VertexSet, iter_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductGraph:
    m: int
    n: int
    topology: Topology

    @property
    def num_vertices(self) -> int:
        return self.m * self.n

    @property
    def full_mask(self) -> int:
        return (1 << (self.m * self.n)) - 1

    @property
    def is_path(self) -> bool:
        return self.topology is Topology.PATH

    def index(self, vertex) -> int:
        row, col = vertex
        if not (0 <= row < self.m and 0 <= col < self.n):
            raise VertexRangeError(f'Vertex ({row},{col}) is not in K_{self.m} x {self._factor_name()}.')
        return row * self.n + col

    def vertex(self, idx: int) -> Vertex:
        if not 0 <= idx < self.num_vertices:
            raise VertexRangeError(f'Index {idx} is out of range.')
        return Vertex(*divmod(idx, self.n))

    def vertex_set(self, bits: int = 0) -> VertexSet:
        return VertexSet(self.m, self.n, bits)

    def columns_adjacent(self, a: int, b: int) -> bool:
        if self.is_path:
            return abs(a - b) == 1
        return (a - b) % self.n in (1, self.n - 1)

    def adjacent(self, u, v) -> bool:
        return u[0] != v[0] and self.columns_adjacent(u[1], v[1])

    def to_networkx(self) -> nx.Graph:
        factor = nx.path_graph(self.n) if self.is_path else nx.cycle_graph(self.n)
        return nx.tensor_product(nx.complete_graph(self.m), factor)

    @cached_property
    def closed_nbhd(self) -> tuple[int, ...]:
        """Closed neighbourhood bitmask of every vertex, by canonical index."""
        product = self.to_networkx()
        n = self.n
        masks = [0] * self.num_vertices
        for (row, col), neighbours in product.adjacency():
            idx = row * n + col
            mask = 1 << idx
            for other_row, other_col in neighbours:
                mask |= 1 << (other_row * n + other_col)
            masks[idx] = mask
        return tuple(masks)

    @cached_property
    def open_nbhd(self) -> tuple[int, ...]:
        return tuple(mask & ~(1 << idx) for idx, mask in enumerate(self.closed_nbhd))

    @cached_property
    def min_degree(self) -> int:
        return min(mask.bit_count() for mask in self.open_nbhd)

    @cached_property
    def _column_masks(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << (row * self.n + col) for row in range(self.m))
            for col in range(self.n)
        )

    @cached_property
    def _row_masks(self) -> tuple[int, ...]:
        width = (1 << self.n) - 1
        return tuple(width << (row * self.n) for row in range(self.m))

    def column_mask(self, j: int) -> int:
        if self.is_path:
            if not 0 <= j < self.n:
                raise VertexRangeError(f'Column {j} does not exist in a path of {self.n} columns.')
        else:
            j %= self.n
        return self._column_masks[j]

    def row_mask(self, i: int) -> int:
        if not 0 <= i < self.m:
            raise VertexRangeError(f'Row {i} does not exist for m={self.m}.')
        return self._row_masks[i]

    def edge_count(self) -> int:
        return sum(mask.bit_count() for mask in self.open_nbhd) // 2

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        pairs = []
        for idx, mask in enumerate(self.open_nbhd):
            for other in iter_bits(mask >> (idx + 1)):
                pairs.append((self.vertex(idx), self.vertex(idx + 1 + other)))
        return pairs

    def _factor_name(self) -> str:
        return f'P_{self.n}' if self.is_path else f'C_{self.n}'

    def __str__(self):
        return f'K_{self.m} x {self._factor_name()}'


def build_product_graph(m: int, n: int, topology: Topology, precompute: bool = True) -> ProductGraph:
    """Build K_m x P_n or K_m x C_n.

    With ``precompute`` set (the default) every closed neighbourhood is
    computed up front; constructions that only need the dimensions skip it.
    """
    topology = Topology(topology)
    if m < 1:
        raise DimensionError(f'm must be at least 1, got {m}.')
    if topology is Topology.PATH and n < 2:
        raise DimensionError(f'A path factor needs n >= 2, got {n}.')
    if topology is Topology.CYCLE and n < 3:
        raise DimensionError(f'A cycle factor needs n >= 3, got {n}.')
    graph = ProductGraph(m, n, topology)
    if precompute:
        graph.closed_nbhd
        logger.debug('Built %s with %d edges', graph, graph.edge_count())
    return graph


def closed_neighborhood(graph: ProductGraph, vertex) -> VertexSet:
    return graph.vertex_set(graph.closed_nbhd[graph.index(vertex)])


def open_neighborhood(graph: ProductGraph, vertex) -> VertexSet:
    return graph.vertex_set(graph.open_nbhd[graph.index(vertex)])


def column(graph: ProductGraph, j: int) -> VertexSet:
    return graph.vertex_set(graph.column_mask(j))


def row(graph: ProductGraph, i: int) -> VertexSet:
    return graph.vertex_set(graph.row_mask(i))


class Automorphism(NamedTuple):
    kind: str
    mapping: tuple[int, ...]
    rows: Optional[tuple[int, int]] = None


def _permute(mask: int, mapping: tuple[int, ...]) -> int:
    out = 0
    for idx in iter_bits(mask):
        out |= 1 << mapping[idx]
    return out


def preserves_adjacency(graph: ProductGraph, mapping: tuple[int, ...]) -> bool:
    closed = graph.closed_nbhd
    return all(_permute(closed[idx], mapping) == closed[mapping[idx]] for idx in range(graph.num_vertices))


def automorphism_generators(graph: ProductGraph) -> list[Automorphism]:
    """Row transpositions plus the symmetries of the path or cycle factor.

    Row transpositions are adjacent swaps (i, i+1), which generate every row
    permutation. Each candidate is checked against the adjacency relation and
    dropped with a warning if it fails.
    """
    m, n = graph.m, graph.n

    def relabel(fn):
        return tuple(fn(*divmod(idx, n)) for idx in range(graph.num_vertices))

    candidates = []
    for i in range(m - 1):
        swap = {i: i + 1, i + 1: i}
        candidates.append(Automorphism(
            'row-swap', relabel(lambda r, c, s=swap: s.get(r, r) * n + c), (i, i + 1)))
    if graph.is_path:
        candidates.append(Automorphism('reversal', relabel(lambda r, c: r * n + (n - 1 - c))))
    else:
        candidates.append(Automorphism('rotation', relabel(lambda r, c: r * n + (c + 1) % n)))
        candidates.append(Automorphism('reflection', relabel(lambda r, c: r * n + (-c) % n)))

    verified = []
    for candidate in candidates:
        if preserves_adjacency(graph, candidate.mapping):
            verified.append(candidate)
        else:
            logger.warning('Discarding %s on %s: adjacency not preserved', candidate.kind, graph)
    return verified
