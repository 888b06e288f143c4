import itertools
import logging

import pytest

from sidcodes.bounds import compare_gamma_id, exact_small_value, lower_bound, upper_bound
from sidcodes.errors import InfeasibleError
from sidcodes.graph import build_product_graph
from sidcodes.models import Topology, Vertex
from sidcodes.solver import (ALL_RULES, Objective, PruningRule, SolveBudget, SolveStatus,
                             enumerate_optimal_codes, forced_mask, lex_key, solve_exhaustive,
                             solve_min_id, solve_min_sid, triple_requirements)
from sidcodes.verification import (audit_necessary_cycle, audit_necessary_path, is_identifying,
                                   is_self_identifying_def1)

logger = logging.getLogger(__name__)

SMALL_GRAPHS = [
    (m, n, topology)
    for topology in Topology
    for m, n in [(3, 3), (3, 4), (3, 5), (3, 6), (4, 3), (4, 4), (5, 3), (6, 3)]
]
# two columns on a path and two rows on a cycle, up to 18 vertices
SMALL_GRAPHS += [(m, 2, Topology.PATH) for m in range(3, 10)]
SMALL_GRAPHS += [(2, n, Topology.CYCLE) for n in range(3, 10)]


def small_id(params):
    m, n, topology = params
    return f'K{m}x{topology.value[0].upper()}{n}'


@pytest.mark.parametrize('m,n,expected', [(3, 3, 9), (3, 4, 12), (3, 5, 12), (3, 6, 14)])
def test_three_row_paths(m, n, expected):
    result = solve_min_sid(build_product_graph(m, n, Topology.PATH))
    assert result.certified and result.status is SolveStatus.CERTIFIED
    assert result.optimum == expected == len(result.witness)
    assert is_self_identifying_def1(result.witness)


@pytest.mark.parametrize('m,n', [(4, 3), (5, 3), (4, 4), (5, 4)])
def test_wider_short_paths(m, n):
    result = solve_min_sid(build_product_graph(m, n, Topology.PATH))
    assert result.certified
    assert result.optimum == exact_small_value(m, n)


@pytest.mark.slow
@pytest.mark.parametrize('m,n', [(4, 5), (4, 6), (5, 5), (6, 5)])
def test_appendix_values_within_budget(m, n):
    budget = SolveBudget(pruning={PruningRule.FORCED_BOUNDARY, PruningRule.TRIPLE_COLUMN,
                                  PruningRule.DEGREE_CONDITION})
    result = solve_min_sid(build_product_graph(m, n, Topology.PATH), budget)
    if not result.certified:
        logger.warning('K%dxP%d not certified within budget; best %d excluded', m, n, result.optimum)
        pytest.skip(f'K{m}xP{n} not certified within the budget')
    assert result.optimum == exact_small_value(m, n)


def test_two_rows_are_infeasible():
    with pytest.raises(InfeasibleError):
        solve_min_sid(build_product_graph(2, 5, Topology.PATH))


def test_two_row_cycle_needs_every_vertex():
    for n in (3, 5, 9):
        result = solve_min_sid(build_product_graph(2, n, Topology.CYCLE))
        assert result.certified and result.optimum == 2 * n


def test_single_row_is_edgeless():
    result = solve_min_sid(build_product_graph(1, 4, Topology.PATH))
    assert result.optimum == 4


def test_helpers():
    graph = build_product_graph(3, 5, Topology.PATH)
    assert forced_mask(graph) == graph.column_mask(0) | graph.column_mask(4)
    assert forced_mask(build_product_graph(3, 5, Topology.CYCLE)) == 0
    assert triple_requirements(graph) == [(graph.column_mask(1) | graph.column_mask(2) | graph.column_mask(3), 3)]
    assert [need for _, need in triple_requirements(build_product_graph(3, 9, Topology.PATH))] == [4, 5]
    assert lex_key(0b001, 3) > lex_key(0b100, 3)


def test_budget_validation():
    with pytest.raises(ValueError):
        SolveBudget(max_nodes=0)
    with pytest.raises(ValueError):
        SolveBudget(workers=0)
    assert SolveBudget(pruning=['TripleColumn']).pruning == {PruningRule.TRIPLE_COLUMN}


@pytest.mark.slow
@pytest.mark.parametrize('params', SMALL_GRAPHS, ids=small_id)
def test_search_matches_exhaustive(params):
    graph = build_product_graph(*params)
    expected, _ = solve_exhaustive(graph)
    for symmetry in (True, False):
        for size in range(len(ALL_RULES) + 1):
            for rules in itertools.combinations(sorted(ALL_RULES), size):
                budget = SolveBudget(allow_symmetry=symmetry, pruning=rules)
                result = solve_min_sid(graph, budget)
                assert result.certified
                assert result.optimum == expected, (symmetry, rules)
                assert is_self_identifying_def1(result.witness)


@pytest.mark.parametrize('params', SMALL_GRAPHS[:4] + SMALL_GRAPHS[8:12], ids=small_id)
def test_identifying_search_matches_exhaustive(params):
    graph = build_product_graph(*params)
    expected, _ = solve_exhaustive(graph, Objective.ID)
    result = solve_min_id(graph)
    assert result.certified and result.objective is Objective.ID
    assert result.optimum == expected
    assert is_identifying(result.witness)
    assert result.optimum <= solve_min_sid(graph).optimum


def test_witness_is_lexicographically_first():
    graph = build_product_graph(3, 6, Topology.PATH)
    plain = solve_min_sid(graph, SolveBudget(allow_symmetry=False))
    _, first = solve_exhaustive(graph)
    assert len(plain.witness) == len(first)
    assert lex_key(plain.witness.bits, 18) <= lex_key(first.bits, 18)
    assert solve_min_sid(graph).witness.bits == plain.witness.bits


def test_pruning_counters():
    graph = build_product_graph(3, 6, Topology.PATH)
    bare = solve_min_sid(graph, SolveBudget(pruning=()))
    pruned = solve_min_sid(graph)
    assert bare.optimum == pruned.optimum
    assert PruningRule.TRIPLE_COLUMN.value not in bare.prunes_by_rule
    assert pruned.nodes_explored <= bare.nodes_explored


def test_workers_give_the_same_witness():
    graph = build_product_graph(3, 6, Topology.PATH)
    single = solve_min_sid(graph, SolveBudget(workers=1))
    double = solve_min_sid(graph, SolveBudget(workers=2))
    assert double.certified
    assert (single.optimum, single.witness.bits) == (double.optimum, double.witness.bits)


def test_budget_cutoff_returns_valid_code():
    graph = build_product_graph(5, 8, Topology.PATH)
    result = solve_min_sid(graph, SolveBudget(max_nodes=50))
    assert not result.certified and result.status is SolveStatus.UNCERTIFIED
    assert is_self_identifying_def1(result.witness)
    assert result.optimum == len(result.witness)


def test_enumerate_small_examples():
    only = enumerate_optimal_codes(build_product_graph(3, 3, Topology.PATH))
    assert [len(code) for code in only] == [9]

    graph = build_product_graph(3, 5, Topology.PATH)
    codes = enumerate_optimal_codes(graph)
    assert len(codes) == 1
    assert all(Vertex(i, j) in codes[0] for i in range(3) for j in (0, 4))

    graph = build_product_graph(3, 6, Topology.PATH)
    assert len(enumerate_optimal_codes(graph, SolveBudget(allow_symmetry=False))) == 3
    assert len(enumerate_optimal_codes(graph)) == 1


@pytest.mark.parametrize('n', [5, 6])
def test_every_path_optimum_passes_audit(n):
    graph = build_product_graph(3, n, Topology.PATH)
    for code in enumerate_optimal_codes(graph, SolveBudget(allow_symmetry=False, pruning=())):
        assert audit_necessary_path(code).passed()


@pytest.mark.parametrize('n', [4, 5, 6])
def test_every_cycle_optimum_passes_audit(n):
    graph = build_product_graph(3, n, Topology.CYCLE)
    codes = enumerate_optimal_codes(graph, SolveBudget(pruning=()))
    assert codes
    for code in codes:
        assert audit_necessary_cycle(code).conditions['triple_column'].holds


def test_cycle_orbits_are_distinct():
    graph = build_product_graph(3, 3, Topology.CYCLE)
    plain = enumerate_optimal_codes(graph, SolveBudget(allow_symmetry=False))
    orbits = enumerate_optimal_codes(graph)
    assert 1 <= len(orbits) <= len(plain)
    assert len({code.bits for code in orbits}) == len(orbits)


@pytest.mark.slow
def test_optimum_sits_between_bounds():
    for m, n, topology in [(3, 7, Topology.PATH), (3, 6, Topology.CYCLE)]:
        result = solve_min_sid(build_product_graph(m, n, topology))
        assert result.certified
        assert lower_bound(m, n, topology) <= result.optimum <= upper_bound(m, n, topology)
    assert solve_min_sid(build_product_graph(3, 7, Topology.PATH)).optimum == 17


def test_compare_gamma_id():
    identifying, self_identifying = compare_gamma_id(3, 3, Topology.PATH)
    assert self_identifying == 9
    assert identifying <= self_identifying
