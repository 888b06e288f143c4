from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Iterator, NamedTuple, Optional

from sidcodes.errors import DimensionError, VertexRangeError

if TYPE_CHECKING:
    from sidcodes.graph import ProductGraph


class Topology(str, enum.Enum):
    PATH = 'path'
    CYCLE = 'cycle'


class Vertex(NamedTuple):
    row: int
    col: int

    def __str__(self):
        return f'({self.row},{self.col})'


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of an m x n product graph, held as a bitmask.

    Bit ``i*n + j`` stands for vertex (i, j).
    """
    m: int
    n: int
    bits: int = 0

    @classmethod
    def from_vertices(cls, m: int, n: int, vertices: Iterable) -> VertexSet:
        bits = 0
        for row, col in vertices:
            if not (0 <= row < m and 0 <= col < n):
                raise VertexRangeError(f'Vertex ({row},{col}) lies outside a {m}x{n} grid.')
            bits |= 1 << (row * n + col)
        return cls(m, n, bits)

    @classmethod
    def full(cls, m: int, n: int) -> VertexSet:
        return cls(m, n, (1 << (m * n)) - 1)

    def _same_grid(self, other: VertexSet):
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionError(
                f'Cannot combine a {self.m}x{self.n} set with a {other.m}x{other.n} set.'
            )

    def __or__(self, other: VertexSet) -> VertexSet:
        self._same_grid(other)
        return VertexSet(self.m, self.n, self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._same_grid(other)
        return VertexSet(self.m, self.n, self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._same_grid(other)
        return VertexSet(self.m, self.n, self.bits & ~other.bits)

    def complement(self) -> VertexSet:
        return VertexSet(self.m, self.n, ((1 << (self.m * self.n)) - 1) & ~self.bits)

    def isdisjoint(self, other: VertexSet) -> bool:
        self._same_grid(other)
        return not self.bits & other.bits

    def issubset(self, other: VertexSet) -> bool:
        self._same_grid(other)
        return not self.bits & ~other.bits

    def __len__(self):
        return self.bits.bit_count()

    def __bool__(self):
        return bool(self.bits)

    def __iter__(self) -> Iterator[Vertex]:
        for idx in iter_bits(self.bits):
            yield Vertex(*divmod(idx, self.n))

    def __contains__(self, vertex) -> bool:
        row, col = vertex
        if not (0 <= row < self.m and 0 <= col < self.n):
            return False
        return bool(self.bits >> (row * self.n + col) & 1)

    def vertices(self) -> list[Vertex]:
        return list(self)


@dataclass(frozen=True)
class CodeSet:
    """A candidate code S over a product graph."""
    graph: 'ProductGraph'
    members: VertexSet

    def __post_init__(self):
        if (self.members.m, self.members.n) != (self.graph.m, self.graph.n):
            raise DimensionError('Code members do not match the graph dimensions.')

    @classmethod
    def from_vertices(cls, graph: 'ProductGraph', vertices: Iterable) -> CodeSet:
        return cls(graph, VertexSet.from_vertices(graph.m, graph.n, vertices))

    @classmethod
    def from_bits(cls, graph: 'ProductGraph', bits: int) -> CodeSet:
        return cls(graph, VertexSet(graph.m, graph.n, bits))

    @classmethod
    def full(cls, graph: 'ProductGraph') -> CodeSet:
        return cls(graph, VertexSet.full(graph.m, graph.n))

    @property
    def bits(self) -> int:
        return self.members.bits

    def without(self, *vertices) -> CodeSet:
        drop = VertexSet.from_vertices(self.graph.m, self.graph.n, vertices)
        return CodeSet(self.graph, self.members - drop)

    def vertices(self) -> list[Vertex]:
        return self.members.vertices()

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, vertex):
        return vertex in self.members


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    witness: tuple[Vertex, ...] = ()

    def __bool__(self):
        return self.holds


@dataclass
class VerificationReport:
    """Named condition outcomes for one code.

    Conditions listed in ``advisory`` are reported but never make the report fail.
    """
    conditions: dict[str, CheckResult] = field(default_factory=dict)
    advisory: set[str] = field(default_factory=set)

    @property
    def is_dominating(self) -> bool:
        return self.conditions['dominating'].holds

    @property
    def is_identifying(self) -> bool:
        return self.conditions['identifying'].holds

    @property
    def is_self_identifying(self) -> bool:
        return self.conditions['self_identifying'].holds

    @property
    def degree_condition_holds(self) -> bool:
        return self.conditions['degree_condition'].holds

    @property
    def violations(self) -> list[tuple[str, tuple[Vertex, ...]]]:
        return [(name, result.witness) for name, result in self.conditions.items() if not result.holds]

    def passed(self, names: Optional[Iterable[str]] = None) -> bool:
        selected = self.conditions if names is None else names
        return all(
            self.conditions[name].holds for name in selected
            if name in self.conditions and name not in self.advisory
        )

    def add(self, name: str, result: CheckResult, advisory: bool = False):
        self.conditions[name] = result
        if advisory:
            self.advisory.add(name)


class Family(str, enum.Enum):
    PATH_GENERAL = 'PathGeneral'
    CYCLE_GENERAL = 'CycleGeneral'
    APPENDIX_SMALL = 'AppendixSmall'


class ParityCase(str, enum.Enum):
    K_EVEN = 'KEven'
    K_ODD = 'KOdd'


class ResidueCase(str, enum.Enum):
    R0 = 'R0'
    R1 = 'R1'
    R2 = 'R2'


@dataclass
class ConstructionPlan:
    family: Family
    m: int
    n: int
    k: int
    parity_case: ParityCase
    residue_case: ResidueCase
    parts: dict[str, VertexSet]
    predicted_size: int
    fallback: bool = False

    @classmethod
    def assemble(cls, family, m, n, parts, fallback=False) -> tuple[ConstructionPlan, VertexSet]:
        union = VertexSet(m, n)
        for part in parts.values():
            union = union | part
        k = n // 3
        plan = cls(
            family=family,
            m=m,
            n=n,
            k=k,
            parity_case=ParityCase.K_EVEN if k % 2 == 0 else ParityCase.K_ODD,
            residue_case=ResidueCase(f'R{n % 3}'),
            parts=dict(parts),
            predicted_size=len(union),
            fallback=fallback,
        )
        return plan, union


@dataclass(frozen=True)
class BoundsRecord:
    m: int
    n: int
    topology: Topology
    lower: int
    upper: int
    exact: Optional[int]
    source: dict[str, str]
    density_lower: Fraction
    density_upper: Fraction


@dataclass(frozen=True)
class DensityRow:
    n: int
    density_lower: Fraction
    density_construction: Fraction
    density_upper: Fraction


@dataclass(frozen=True)
class SweepRow:
    m: int
    n: int
    topology: Topology
    lower: int
    construction: int
    upper: int
    exact: Optional[int]
    density_lower: Fraction
    density_construction: Fraction
    density_upper: Fraction
