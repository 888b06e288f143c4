"""Code checks and structural audits.

Every check returns a :class:`CheckResult` whose witness is the first
violation in canonical (row-major) order.
"""
from __future__ import annotations

import logging

from sidcodes.errors import TopologyError
from sidcodes.graph import ProductGraph
from sidcodes.models import CheckResult, CodeSet, Topology, VerificationReport, Vertex, iter_bits, lowest_bit

logger = logging.getLogger(__name__)

PASS = CheckResult(True)


def sid_violation(graph: ProductGraph, mask: int, vertices=None):
    """Return (v, extra) for the first vertex whose code-neighbour meet is not {v}, else None."""
    closed = graph.closed_nbhd
    full = graph.full_mask
    for v in range(graph.num_vertices) if vertices is None else vertices:
        own = 1 << v
        meet = full
        for c in iter_bits(closed[v] & mask):
            meet &= closed[c]
            if meet == own:
                break
        if meet != own:
            return v, lowest_bit(meet & ~own)
    return None


def identifying_holds(graph: ProductGraph, mask: int) -> bool:
    seen = set()
    for nb in graph.closed_nbhd:
        trace = nb & mask
        if not trace or trace in seen:
            return False
        seen.add(trace)
    return True


def is_dominating(code: CodeSet) -> CheckResult:
    graph = code.graph
    for idx, nb in enumerate(graph.closed_nbhd):
        if not nb & code.bits:
            return CheckResult(False, (graph.vertex(idx),))
    return PASS


def is_identifying(code: CodeSet) -> CheckResult:
    dominated = is_dominating(code)
    if not dominated:
        return dominated
    graph = code.graph
    groups: dict[int, list[int]] = {}
    for idx, nb in enumerate(graph.closed_nbhd):
        groups.setdefault(nb & code.bits, []).append(idx)
    clashes = [tuple(members[:2]) for members in groups.values() if len(members) > 1]
    if clashes:
        first, second = min(clashes)
        return CheckResult(False, (graph.vertex(first), graph.vertex(second)))
    return PASS


def is_self_identifying_def1(code: CodeSet) -> CheckResult:
    """The meet of N[c] over the codewords c in N[v] must be exactly {v}.

    An empty family meets to the whole vertex set.
    """
    graph = code.graph
    failure = sid_violation(graph, code.bits)
    if failure is None:
        return PASS
    v, extra = failure
    return CheckResult(False, (graph.vertex(v), graph.vertex(extra)))


def is_self_identifying_def2(code: CodeSet) -> CheckResult:
    """Every ordered pair (u, v), u != v, needs a codeword in N[u] outside N[v]."""
    graph = code.graph
    closed = graph.closed_nbhd
    size = graph.num_vertices
    for u in range(size):
        trace = closed[u] & code.bits
        for v in range(size):
            if v != u and not trace & ~closed[v]:
                return CheckResult(False, (graph.vertex(u), graph.vertex(v)))
    return PASS


def check_degree_condition(code: CodeSet) -> CheckResult:
    graph = code.graph
    for idx, nb in enumerate(graph.open_nbhd):
        if (nb & code.bits).bit_count() < 2:
            return CheckResult(False, (graph.vertex(idx),))
    return PASS


def _local_criteria(graph: ProductGraph, mask: int, i: int, j: int) -> bool:
    """Local test for vertex (i, j) whose neighbour columns are both present."""
    m, n = graph.m, graph.n
    cyclic = not graph.is_path
    left = graph.column_mask(j - 1)
    right = graph.column_mask(j + 1)
    sides = (left | right) & mask
    rows = [r for r in range(m) if r != i and sides & graph.row_mask(r)]
    if len(rows) < 2:
        return False
    if mask >> (i * n + j) & 1:
        return True
    if len(rows) < m - 1:
        return False
    outside = ~graph.row_mask(i)
    if (cyclic or j + 2 <= n - 1) and not left & mask & outside:
        return False
    if (cyclic or j - 2 >= 0) and not right & mask & outside:
        return False
    return True


def check_sufficient_path(code: CodeSet) -> CheckResult:
    """Local criteria that guarantee self-identification on K_m x P_n.

    Boundary columns must be full, the columns next to them must hold at
    least three codewords, and every inner vertex must pass the local test.
    """
    graph = code.graph
    if not graph.is_path:
        raise TopologyError('check_sufficient_path needs a path product.')
    n = graph.n
    if n < 3:
        raise TopologyError('check_sufficient_path needs n >= 3.')
    mask = code.bits
    for j in (0, n - 1):
        missing = graph.column_mask(j) & ~mask
        if missing:
            return CheckResult(False, (graph.vertex(lowest_bit(missing)),))
    for j in sorted({1, n - 2}):
        if (graph.column_mask(j) & mask).bit_count() < 3:
            return CheckResult(False, (Vertex(0, j),))
    for i in range(graph.m):
        for j in range(1, n - 1):
            if not _local_criteria(graph, mask, i, j):
                return CheckResult(False, (Vertex(i, j),))
    return PASS


def check_sufficient_cycle(code: CodeSet) -> CheckResult:
    """Cyclic counterpart of :func:`check_sufficient_path`.

    For n < 5 the neighbouring columns of a vertex overlap with those two
    steps away, so the local criteria say nothing and the definition itself
    is checked instead.
    """
    graph = code.graph
    if graph.is_path:
        raise TopologyError('check_sufficient_cycle needs a cycle product.')
    if graph.n < 5:
        return is_self_identifying_def1(code)
    mask = code.bits
    for i in range(graph.m):
        for j in range(graph.n):
            if not _local_criteria(graph, mask, i, j):
                return CheckResult(False, (Vertex(i, j),))
    return PASS


def core_report(code: CodeSet) -> VerificationReport:
    report = VerificationReport()
    report.add('dominating', is_dominating(code))
    report.add('identifying', is_identifying(code))
    report.add('self_identifying', is_self_identifying_def1(code))
    report.add('degree_condition', check_degree_condition(code))
    return report


def _count(graph: ProductGraph, mask: int, *cols: int) -> int:
    total = 0
    for j in cols:
        total |= graph.column_mask(j)
    return (total & mask).bit_count()


def _path_triple_requirement(m: int, n: int, j: int):
    if n >= 7 and 3 <= j <= n - 4:
        return m + 2
    if n >= 6 and 2 <= j <= n - 3:
        return m + 1
    if n == 5 and j == 2:
        return m
    return None


def _column_states(graph: ProductGraph, mask: int, j: int) -> bool:
    m, n = graph.m, graph.n
    here = _count(graph, mask, j)
    beside = _count(graph, mask, j - 1, j + 1)
    if here == 0 and 3 <= j <= n - 4:
        return graph.column_mask(j - 1) & ~mask == 0 and graph.column_mask(j + 1) & ~mask == 0
    if here == 1:
        return beside >= (m if j in (2, n - 3) else m + 1)
    if 2 <= here <= m - 2:
        sides = (graph.column_mask(j - 1) | graph.column_mask(j + 1)) & mask
        return beside >= m and all(sides & graph.row_mask(i) for i in range(m))
    if here == m - 1:
        return beside >= m - 1
    if here == m:
        return beside >= 3
    return True


def audit_necessary_path(code: CodeSet) -> VerificationReport:
    """Report every necessary condition for paths within its proven range.

    The audit never raises on invalid codes; it only reports.
    """
    graph = code.graph
    if not graph.is_path:
        raise TopologyError('audit_necessary_path needs a path product.')
    m, n, mask = graph.m, graph.n, code.bits
    report = core_report(code)
    if m < 3 or n < 3:
        return report

    missing = (graph.column_mask(0) | graph.column_mask(n - 1)) & ~mask
    report.add('boundary_columns', CheckResult(
        not missing, tuple(graph.vertex(idx) for idx in iter_bits(missing))))

    short = tuple(Vertex(0, j) for j in sorted({1, n - 2}) if _count(graph, mask, j) < 3)
    report.add('near_boundary', CheckResult(not short, short))

    if n < 5:
        return report
    inner = range(2, n - 2)

    stranded = []
    for j in inner:
        left, right = graph.column_mask(j - 1), graph.column_mask(j + 1)
        for i in range(m):
            if mask >> (i * n + j) & 1:
                continue
            sides = (left | right) & mask
            covered = all(sides & graph.row_mask(r) for r in range(m) if r != i)
            if not (covered and left & mask and right & mask):
                stranded.append(Vertex(i, j))
    report.add('internal_noncodeword', CheckResult(not stranded, tuple(stranded[:1])))

    broken = [Vertex(0, j) for j in inner if not _column_states(graph, mask, j)]
    report.add('column_states', CheckResult(not broken, tuple(broken)), advisory=True)
    if broken:
        logger.warning('Column-state clauses fail at columns %s', [v.col for v in broken])

    thin = []
    for j in inner:
        need = _path_triple_requirement(m, n, j)
        if need is not None and _count(graph, mask, j - 1, j, j + 1) < need:
            thin.append(Vertex(0, j))
    report.add('triple_column', CheckResult(not thin, tuple(thin)))
    return report


def audit_necessary_cycle(code: CodeSet) -> VerificationReport:
    """Every cyclic column triple must hold at least m + 2 codewords."""
    graph = code.graph
    if graph.topology is not Topology.CYCLE:
        raise TopologyError('audit_necessary_cycle needs a cycle product.')
    report = core_report(code)
    m, n, mask = graph.m, graph.n, code.bits
    if m < 3:
        return report
    thin = tuple(Vertex(0, j) for j in range(n) if _count(graph, mask, j - 1, j, j + 1) < m + 2)
    report.add('triple_column', CheckResult(not thin, thin))
    return report


CHECKS = {
    'dominating': is_dominating,
    'identifying': is_identifying,
    'def1': is_self_identifying_def1,
    'def2': is_self_identifying_def2,
    'degree': check_degree_condition,
}


def verify(code: CodeSet, checks) -> tuple[VerificationReport, list[str]]:
    """Run the named checks and return the report plus the conditions that decide pass/fail.

    Besides the keys of :data:`CHECKS`, ``sufficient`` and ``necessary``
    select the topology-specific sufficient check and audit.
    """
    report = core_report(code)
    decisive = []
    for name in checks:
        if name in CHECKS:
            report.add(name, CHECKS[name](code))
            decisive.append(name)
        elif name == 'sufficient':
            check = check_sufficient_path if code.graph.is_path else check_sufficient_cycle
            report.add('sufficient', check(code))
            decisive.append('sufficient')
        elif name == 'necessary':
            audit = audit_necessary_path if code.graph.is_path else audit_necessary_cycle
            for cond, result in audit(code).conditions.items():
                if cond in report.conditions:
                    continue
                report.add(cond, result, advisory=(cond == 'column_states'))
                decisive.append(cond)
        else:
            raise ValueError(f'Unknown check {name!r}.')
    return report, decisive
