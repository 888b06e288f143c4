"""Exact minimum codes by branch and bound.

Vertices are decided in canonical order, excluding before including, so the
first optimum reached is the one with the lexicographically smallest
membership bitstring. The set T = S + undecided vertices is kept feasible at
every node: both code properties are monotone, so a subtree holds a code
exactly when T itself is one.
"""
from __future__ import annotations

import enum
import itertools
import logging
import multiprocessing
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field
from typing import Optional

from sidcodes.errors import BudgetExceededError, InfeasibleError
from sidcodes.graph import ProductGraph, automorphism_generators
from sidcodes.models import CodeSet, iter_bits
from sidcodes.verification import identifying_holds, sid_violation

logger = logging.getLogger(__name__)


class PruningRule(str, enum.Enum):
    FORCED_BOUNDARY = 'ForcedBoundary'
    TRIPLE_COLUMN = 'TripleColumn'
    DEGREE_CONDITION = 'DegreeCondition'


ALL_RULES = frozenset(PruningRule)


class Objective(str, enum.Enum):
    SID = 'sid'
    ID = 'id'


class SolveStatus(str, enum.Enum):
    CERTIFIED = 'certified'
    UNCERTIFIED = 'uncertified'


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: int = 10**8
    max_seconds: float = 300.0
    allow_symmetry: bool = True
    pruning: frozenset = ALL_RULES
    workers: int = 1

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError('max_nodes must be at least 1.')
        if self.max_seconds <= 0:
            raise ValueError('max_seconds must be positive.')
        if self.workers < 1:
            raise ValueError('workers must be at least 1.')
        object.__setattr__(self, 'pruning', frozenset(PruningRule(rule) for rule in self.pruning))


@dataclass
class SolveResult:
    optimum: int
    witness: CodeSet
    certified: bool
    nodes_explored: int
    prunes_by_rule: dict[str, int] = field(default_factory=dict)
    objective: Objective = Objective.SID
    elapsed: float = 0.0

    @property
    def status(self) -> SolveStatus:
        return SolveStatus.CERTIFIED if self.certified else SolveStatus.UNCERTIFIED


class _BudgetExhausted(Exception):
    pass


def lex_key(mask: int, size: int) -> int:
    """Integer whose order matches the membership bitstring read from index 0."""
    return int(format(mask, f'0{size}b')[::-1], 2) if size else 0


def _permute(mask: int, mapping) -> int:
    out = 0
    for idx in iter_bits(mask):
        out |= 1 << mapping[idx]
    return out


def forced_mask(graph: ProductGraph) -> int:
    """Boundary columns every self-identifying code on a path must contain."""
    if not graph.is_path or graph.m < 3 or graph.n < 3:
        return 0
    return graph.column_mask(0) | graph.column_mask(graph.n - 1)


def triple_requirements(graph: ProductGraph) -> list[tuple[int, int]]:
    """Disjoint column triples with the fewest codewords each must hold."""
    m, n = graph.m, graph.n
    if m < 3 or n < 5:
        return []
    mask_of = lambda j: graph.column_mask(j - 1) | graph.column_mask(j) | graph.column_mask(j + 1)
    if not graph.is_path:
        return [(mask_of(3 * t + 1), m + 2) for t in range(n // 3)]
    triples = []
    for j in range(2, n - 2, 3):
        if n >= 7 and 3 <= j <= n - 4:
            need = m + 2
        elif n >= 6:
            need = m + 1
        else:
            need = m
        triples.append((mask_of(j), need))
    return triples


class _Search:
    def __init__(self, graph: ProductGraph, objective: Objective, budget: SolveBudget,
                 deadline: float, shared=None, target: Optional[int] = None):
        self.graph = graph
        self.objective = objective
        self.size = graph.num_vertices
        self.closed = graph.closed_nbhd
        self.open = graph.open_nbhd
        self.full = graph.full_mask
        rules = budget.pruning if objective is Objective.SID else frozenset()
        self.use_degree = PruningRule.DEGREE_CONDITION in rules and graph.min_degree >= 1
        self.triples = triple_requirements(graph) if PruningRule.TRIPLE_COLUMN in rules else []
        self.forced = forced_mask(graph) if PruningRule.FORCED_BOUNDARY in rules else 0

        self.swapped_rows = set()
        self.leaf_maps = []
        self.all_maps = []
        if budget.allow_symmetry:
            for generator in automorphism_generators(graph):
                self.all_maps.append(generator.mapping)
                if generator.kind == 'row-swap':
                    self.swapped_rows.add(generator.rows[1])
                else:
                    self.leaf_maps.append(generator.mapping)

        self.max_nodes = budget.max_nodes
        self.deadline = deadline
        self.shared = shared
        self.shared_best = self.size + 1
        # with a target every leaf of that size is collected
        self.target = target
        self.collected: list[int] = []
        self.best = self.size + 1
        self.best_mask: Optional[int] = None
        self.nodes = 0
        self.prunes = Counter()

    def root(self):
        return 0, self.forced, self.full, False

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _BudgetExhausted
        if not self.nodes & 1023:
            if time.time() > self.deadline:
                raise _BudgetExhausted
            if self.shared is not None:
                self.shared_best = self.shared.value

    def _pruned(self, S: int, T: int) -> bool:
        bound = S.bit_count()
        for mask, need in self.triples:
            if (T & mask).bit_count() < need:
                self.prunes[PruningRule.TRIPLE_COLUMN.value] += 1
                return True
            have = (S & mask).bit_count()
            if have < need:
                bound += need - have
        if self.target is not None:
            if bound > self.target:
                self.prunes['Bound'] += 1
                return True
            return False
        if bound >= self.best or bound > self.shared_best:
            self.prunes['Bound'] += 1
            return True
        return False

    def _feasible_without(self, v: int, S: int, T: int) -> bool:
        if self.use_degree:
            for w in iter_bits(self.open[v]):
                if (self.open[w] & T).bit_count() < 2:
                    self.prunes[PruningRule.DEGREE_CONDITION.value] += 1
                    return False
        if self.objective is Objective.SID:
            ok = sid_violation(self.graph, T, iter_bits(self.closed[v])) is None
        else:
            ok = identifying_holds(self.graph, T)
        if not ok:
            self.prunes['Feasibility'] += 1
        return ok

    def children(self, pos: int, S: int, T: int, tied: bool):
        n = self.graph.n
        if pos % n == 0:
            tied = pos // n in self.swapped_rows
        bit = 1 << pos
        # row above is still equal so far and holds this column: exclusion would break row order
        keep = tied and bool(S & (bit >> n))
        if S & bit:
            return [(pos + 1, S, T, keep)]
        kids = []
        if keep:
            self.prunes['Symmetry'] += 1
        else:
            T2 = T & ~bit
            if self._feasible_without(pos, S, T2):
                kids.append((pos + 1, S, T2, tied))
        kids.append((pos + 1, S | bit, T, keep))
        return kids

    def _record(self, S: int):
        if self.leaf_maps:
            key = lex_key(S, self.size)
            for mapping in self.leaf_maps:
                if lex_key(_permute(S, mapping), self.size) < key:
                    self.prunes['Symmetry'] += 1
                    return
        if self.target is not None:
            self.collected.append(S)
            return
        size = S.bit_count()
        if size < self.best:
            self.best, self.best_mask = size, S
            if self.shared is not None:
                with self.shared.get_lock():
                    if size < self.shared.value:
                        self.shared.value = size

    def search(self, pos: int, S: int, T: int, tied: bool):
        self._tick()
        if self._pruned(S, T):
            return
        if pos == self.size:
            self._record(S)
            return
        for child in self.children(pos, S, T, tied):
            self.search(*child)

    def frontier(self, target: int) -> list[tuple]:
        """Expand the root breadth-first, in lexicographic order, into at least ``target`` states."""
        layer = [self.root()]
        while len(layer) < target:
            expanded = []
            for state in layer:
                if state[0] == self.size:
                    expanded.append(state)
                    continue
                self._tick()
                if not self._pruned(state[1], state[2]):
                    expanded.extend(self.children(*state))
            if expanded == layer or not expanded:
                layer = expanded
                break
            layer = expanded
        return layer


def _check_feasible(graph: ProductGraph, objective: Objective):
    full = graph.full_mask
    if objective is Objective.SID:
        if graph.min_degree >= 1 and graph.min_degree < 2:
            raise InfeasibleError(f'{graph} has vertices with fewer than two neighbours.')
        if sid_violation(graph, full) is not None:
            raise InfeasibleError(f'{graph} has no self-identifying code.')
    elif not identifying_holds(graph, full):
        raise InfeasibleError(f'{graph} has no identifying code.')


_shared_best = None


def _init_worker(shared):
    global _shared_best
    _shared_best = shared


def _run_subtree(graph, objective, budget, deadline, state):
    search = _Search(graph, objective, budget, deadline, shared=_shared_best)
    search.shared_best = _shared_best.value if _shared_best is not None else search.shared_best
    exhausted = False
    try:
        search.search(*state)
    except _BudgetExhausted:
        exhausted = True
    return search.best, search.best_mask, search.nodes, dict(search.prunes), exhausted


def _solve_parallel(graph, objective, budget, deadline, search: _Search):
    states = search.frontier(4 * budget.workers)
    shared = multiprocessing.Value('i', graph.num_vertices + 1)
    with ProcessPoolExecutor(max_workers=budget.workers, initializer=_init_worker,
                             initargs=(shared,)) as pool:
        futures = [pool.submit(_run_subtree, graph, objective, budget, deadline, state) for state in states]
        results = [future.result() for future in futures]
    exhausted = False
    for best, best_mask, nodes, prunes, cut in results:
        search.nodes += nodes
        search.prunes.update(prunes)
        exhausted = exhausted or cut
        if best_mask is not None and best < search.best:
            search.best, search.best_mask = best, best_mask
    return not exhausted


def _solve(graph: ProductGraph, budget: Optional[SolveBudget], objective: Objective) -> SolveResult:
    budget = budget or SolveBudget()
    started = time.time()
    _check_feasible(graph, objective)
    deadline = started + budget.max_seconds
    search = _Search(graph, objective, budget, deadline)
    logger.info('Solving %s code on %s (symmetry=%s, pruning=%s, workers=%d)',
                objective.value, graph, budget.allow_symmetry,
                sorted(rule.value for rule in budget.pruning), budget.workers)

    certified = None
    if budget.workers > 1:
        try:
            certified = _solve_parallel(graph, objective, budget, deadline, search)
        except _BudgetExhausted:
            certified = False
        except (OSError, ImportError, NotImplementedError, BrokenProcessPool) as exc:
            logger.warning('Process pool unavailable (%s); searching in a single process', exc)
            search = _Search(graph, objective, budget, deadline)
    if certified is None:
        try:
            search.search(*search.root())
            certified = True
        except _BudgetExhausted:
            certified = False

    mask = search.best_mask if search.best_mask is not None else graph.full_mask
    witness = CodeSet.from_bits(graph, mask)
    valid = (sid_violation(graph, mask) is None if objective is Objective.SID
             else identifying_holds(graph, mask))
    if not valid:
        raise RuntimeError(f'Search returned an invalid code on {graph}.')
    elapsed = time.time() - started
    if certified:
        logger.info('Optimum %d on %s after %d nodes', len(witness), graph, search.nodes)
    else:
        logger.warning('Budget exhausted on %s after %d nodes; best so far %d',
                       graph, search.nodes, len(witness))
    logger.debug('Prunes by rule: %s', dict(search.prunes))
    return SolveResult(
        optimum=len(witness), witness=witness, certified=certified,
        nodes_explored=search.nodes, prunes_by_rule=dict(search.prunes),
        objective=objective, elapsed=elapsed,
    )


def solve_min_sid(graph: ProductGraph, budget: Optional[SolveBudget] = None) -> SolveResult:
    return _solve(graph, budget, Objective.SID)


def solve_min_id(graph: ProductGraph, budget: Optional[SolveBudget] = None) -> SolveResult:
    return _solve(graph, budget, Objective.ID)


def _orbit_leader(mask: int, maps, size: int) -> int:
    seen = {mask}
    stack = [mask]
    while stack:
        current = stack.pop()
        for mapping in maps:
            image = _permute(current, mapping)
            if image not in seen:
                seen.add(image)
                stack.append(image)
    return min(seen, key=lambda item: lex_key(item, size))


def enumerate_optimal_codes(graph: ProductGraph, budget: Optional[SolveBudget] = None) -> list[CodeSet]:
    """Every minimum self-identifying code, one per orbit when symmetry is allowed."""
    budget = budget or SolveBudget()
    result = solve_min_sid(graph, SolveBudget(
        max_nodes=budget.max_nodes, max_seconds=budget.max_seconds,
        allow_symmetry=budget.allow_symmetry, pruning=budget.pruning))
    if not result.certified:
        raise BudgetExceededError(f'Could not certify the optimum on {graph}.')
    search = _Search(graph, Objective.SID, budget, time.time() + budget.max_seconds, target=result.optimum)
    try:
        search.search(*search.root())
    except _BudgetExhausted:
        raise BudgetExceededError(f'Enumeration on {graph} ran out of budget.') from None

    size = graph.num_vertices
    masks = set(search.collected)
    if budget.allow_symmetry:
        masks = {_orbit_leader(mask, search.all_maps, size) for mask in masks}
    ordered = sorted(masks, key=lambda mask: lex_key(mask, size))
    logger.info('Found %d optimal codes of size %d on %s', len(ordered), result.optimum, graph)
    return [CodeSet.from_bits(graph, mask) for mask in ordered]


def solve_exhaustive(graph: ProductGraph, objective: Objective = Objective.SID) -> tuple[int, CodeSet]:
    """Try every subset by increasing size; the reference the search is measured against."""
    objective = Objective(objective)
    if objective is Objective.SID:
        holds = lambda mask: sid_violation(graph, mask) is None
    else:
        holds = lambda mask: identifying_holds(graph, mask)
    for size in range(1, graph.num_vertices + 1):
        for combo in itertools.combinations(range(graph.num_vertices), size):
            mask = sum(1 << idx for idx in combo)
            if holds(mask):
                return size, CodeSet.from_bits(graph, mask)
    raise InfeasibleError(f'{graph} has no {objective.value} code.')
