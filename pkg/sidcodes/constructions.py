"""Explicit self-identifying codes for K_m x P_n and K_m x C_n.

Each constructor returns the code together with a :class:`ConstructionPlan`
naming its disjoint parts. Sizes are always counted from the assembled set.
"""
from __future__ import annotations

import enum
import logging

from sidcodes.errors import ConstructionRangeError
from sidcodes.graph import build_product_graph
from sidcodes.models import CodeSet, ConstructionPlan, Family, Topology, Vertex, VertexSet

logger = logging.getLogger(__name__)


class AVariant(str, enum.Enum):
    A = 'A'
    A_PRIME = 'APrime'
    A_DOUBLE_PRIME = 'ADoublePrime'


class BVariant(str, enum.Enum):
    B = 'B'
    B_PRIME = 'BPrime'
    B_DOUBLE_PRIME = 'BDoublePrime'


def _head_rows(col: int) -> set[Vertex]:
    return {Vertex(0, col), Vertex(1, col), Vertex(2, col)}


def pattern_A(t: int, variant: AVariant, k: int) -> frozenset[Vertex]:
    """Six-vertex filler blocks for paths, or the three-vertex closing block."""
    variant = AVariant(variant)
    if variant is AVariant.A_DOUBLE_PRIME:
        if k < 3:
            raise ConstructionRangeError(f'The closing block needs k >= 3, got k={k}.')
        c = 3 * k
        return frozenset({Vertex(0, c - 7), Vertex(1, c - 5), Vertex(2, c - 5)})
    top = k - 3 if variant is AVariant.A else k - 4
    if t % 2 == 0 or not 1 <= t <= top:
        raise ConstructionRangeError(f'{variant.value} block needs odd t in [1, {top}], got t={t}.')
    c = 3 * t
    if variant is AVariant.A:
        return frozenset({Vertex(2, c - 1), Vertex(0, c + 1), Vertex(1, c + 1),
                          Vertex(0, c + 2), Vertex(1, c + 4), Vertex(2, c + 4)})
    return frozenset({Vertex(0, c - 1), Vertex(1, c + 1), Vertex(2, c + 1),
                      Vertex(2, c + 2), Vertex(0, c + 4), Vertex(1, c + 4)})


def pattern_B(t: int, variant: BVariant, k: int, n: int) -> frozenset[Vertex]:
    """Blocks for cycles; column indices are reduced mod n."""
    variant = BVariant(variant)
    if variant is BVariant.B_PRIME:
        return frozenset(_head_rows((3 * k) % n))
    if variant is BVariant.B_DOUBLE_PRIME:
        if k < 1:
            raise ConstructionRangeError(f'The doubled block needs k >= 1, got k={k}.')
        return frozenset(_head_rows((3 * k - 3) % n) | _head_rows((3 * k - 1) % n))
    top = k - 2 if k % 2 == 0 else k - 3
    if t % 2 or not 0 <= t <= top:
        raise ConstructionRangeError(f'B block needs even t in [0, {top}], got t={t}.')
    c = 3 * t
    return frozenset(Vertex(r, col % n) for r, col in (
        (0, c), (1, c + 2), (2, c + 2), (2, c + 3), (0, c + 5), (1, c + 5)))


class _Parts:
    """Ordered named parts over a fixed grid."""

    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.parts: dict[str, VertexSet] = {}

    def add(self, name: str, vertices):
        self.parts[name] = VertexSet.from_vertices(self.m, self.n, vertices)

    def column(self, j: int, name: str = None):
        self.add(name or f'C{j}', (Vertex(i, j) for i in range(self.m)))


def _finish(family: Family, m: int, n: int, topology: Topology, parts: _Parts, fallback=False):
    graph = build_product_graph(m, n, topology, precompute=False)
    plan, union = ConstructionPlan.assemble(family, m, n, parts.parts, fallback=fallback)
    logger.debug('Constructed %s code on %s with %d codewords', family.value, graph, plan.predicted_size)
    return CodeSet(graph, union), plan


def construct_path_code(m: int, n: int):
    """General path construction for m >= 3 and n >= 7."""
    if m < 3 or n < 7:
        raise ConstructionRangeError(
            f'The general path construction needs m >= 3 and n >= 7, got ({m}, {n}); '
            'use construct_appendix_code for 3 <= n <= 6.')
    k, r = divmod(n, 3)
    parts = _Parts(m, n)

    s1 = [Vertex(i, j) for j in (0, n - 1) for i in range(m)]
    parts.add('S1', s1)
    parts.add('S2', _head_rows(1) | _head_rows(n - 2))

    s3 = set()
    columns = lambda *cols: {Vertex(i, j) for j in cols for i in range(m)}
    if k % 2 == 0:
        for t in range(1, k - 2, 2):
            s3 |= pattern_A(t, AVariant.A, k) | columns(3 * t, 3 * t + 3)
    else:
        for t in range(1, k - 3, 2):
            s3 |= pattern_A(t, AVariant.A_PRIME, k) | columns(3 * t, 3 * t + 3)
        s3 |= pattern_A(0, AVariant.A_DOUBLE_PRIME, k) | columns(3 * k - 6)
    parts.add('S3', s3)

    if r == 0:
        s4 = _head_rows(n - 3) | columns(n - 4)
    elif r == 1:
        s4 = {Vertex(2, n - 5), Vertex(0, n - 3), Vertex(1, n - 3)} | columns(n - 4)
    else:
        s4 = {Vertex(2, n - 6), Vertex(0, n - 4), Vertex(1, n - 4)} | columns(n - 5, n - 3)
    parts.add('S4', s4)
    return _finish(Family.PATH_GENERAL, m, n, Topology.PATH, parts)


def construct_cycle_code(m: int, n: int):
    """Cycle construction; n in {3, 4} falls back to fixed small codes."""
    if m < 3 or n < 3:
        raise ConstructionRangeError(f'The cycle construction needs m >= 3 and n >= 3, got ({m}, {n}).')
    parts = _Parts(m, n)
    if n == 3:
        parts.column(0)
        parts.add('block', {Vertex(0, 1), Vertex(1, 1), Vertex(0, 2), Vertex(1, 2)})
        return _finish(Family.CYCLE_GENERAL, m, n, Topology.CYCLE, parts, fallback=True)
    if n == 4:
        # (i, j) and (i, j+2) are open twins, so no vertex can be left out
        for j in range(4):
            parts.column(j)
        return _finish(Family.CYCLE_GENERAL, m, n, Topology.CYCLE, parts, fallback=True)

    k, r = divmod(n, 3)
    starts = range(0, k - 1, 2) if k % 2 == 0 else range(0, k - 2, 2)
    for t in starts:
        parts.add(f'B{t}', pattern_B(t, BVariant.B, k, n))
        parts.column(3 * t + 1)
        parts.column(3 * t + 4)
    if k % 2:
        parts.add("B''", pattern_B(0, BVariant.B_DOUBLE_PRIME, k, n))
        parts.column(3 * k - 2)
    if r == 1:
        parts.column(3 * k)
        if k % 2 == 0:
            # otherwise (0, 3k) sees only (1, 3k-1) among the codewords
            parts.add('repair', {Vertex(2, 3 * k - 1)})
    elif r == 2:
        parts.add("B'", pattern_B(0, BVariant.B_PRIME, k, n))
        parts.column(3 * k + 1)
    return _finish(Family.CYCLE_GENERAL, m, n, Topology.CYCLE, parts)


def construct_appendix_code(m: int, n: int):
    """Optimal codes for paths with 3 <= n <= 6."""
    if m < 3 or not 3 <= n <= 6:
        raise ConstructionRangeError(f'Small path codes cover m >= 3 and 3 <= n <= 6, got ({m}, {n}).')
    parts = _Parts(m, n)
    tail = range(3, m)

    if m == 3:
        full = {3: range(3), 4: range(4), 5: (0, 1, 3, 4), 6: (0, 1, 4, 5)}[n]
        for j in full:
            parts.column(j)
        if n == 6:
            parts.add('pair', {Vertex(2, 2), Vertex(2, 3)})
    elif n == 3:
        parts.column(0)
        parts.column(2)
        parts.add('head1', _head_rows(1))
    elif n == 4:
        parts.column(0)
        parts.column(3)
        parts.add('head1', _head_rows(1))
        parts.add('head2', _head_rows(2))
    elif n == 5:
        parts.column(0)
        parts.column(4)
        parts.add('head1', _head_rows(1))
        if m <= 5:
            parts.add('tail3', {Vertex(i, 3) for i in range(m - 3, m)})
        else:
            parts.add('tail3', {Vertex(i, 3) for i in tail})
    else:
        parts.column(0)
        parts.column(5)
        parts.add('head1', _head_rows(1))
        parts.add('head4', _head_rows(4))
        if m <= 5:
            parts.add('tail23', {Vertex(i, j) for i in tail for j in (2, 3)})
        else:
            parts.column(2)
    return _finish(Family.APPENDIX_SMALL, m, n, Topology.PATH, parts)


def construct(m: int, n: int, topology: Topology):
    topology = Topology(topology)
    if m < 3 or n < 3:
        raise ConstructionRangeError(f'Constructions need m >= 3 and n >= 3, got ({m}, {n}).')
    if topology is Topology.CYCLE:
        return construct_cycle_code(m, n)
    if n <= 6:
        return construct_appendix_code(m, n)
    return construct_path_code(m, n)
