from fractions import Fraction

import pytest

from sidcodes.bounds import (bounds_record, density_gap_note, density_profile, exact_small_value,
                             fixed_m_limits, lower_bound, sweep, upper_bound)
from sidcodes.constructions import construct
from sidcodes.errors import BoundsRangeError, DimensionError
from sidcodes.models import Topology


@pytest.mark.parametrize('m,n,expected', [
    (3, 3, 9), (3, 4, 12), (3, 5, 12), (3, 6, 14),
    (4, 3, 11), (5, 3, 13), (4, 4, 14), (5, 4, 16),
    (4, 5, 14), (5, 5, 16), (6, 5, 18), (4, 6, 16), (6, 6, 24),
    (3, 7, None), (2, 5, None),
])
def test_exact_small_values(m, n, expected):
    assert exact_small_value(m, n) == expected


def test_bound_examples():
    assert lower_bound(3, 7, Topology.PATH) == 13
    assert upper_bound(3, 7, Topology.PATH) == 21
    assert lower_bound(3, 6, Topology.CYCLE) == 10
    assert upper_bound(3, 6, Topology.CYCLE) == 15
    assert lower_bound(4, 9, Topology.CYCLE) == 18
    assert lower_bound(3, 5, Topology.PATH) == upper_bound(3, 5, Topology.PATH) == 12


def test_bounds_reject_small_dimensions():
    with pytest.raises(BoundsRangeError):
        lower_bound(2, 7, Topology.PATH)
    with pytest.raises(DimensionError):
        bounds_record(3, 2, Topology.CYCLE)


def test_record_fields_are_exact():
    record = bounds_record(3, 30, Topology.CYCLE)
    assert record.density_lower == Fraction(5, 9)
    assert record.density_upper == Fraction(record.upper, 90)
    assert record.exact is None
    assert record.source['lower'] == 'cycle-triple-column'
    small = bounds_record(3, 6, Topology.PATH)
    assert small.lower == small.upper == small.exact == 14


@pytest.mark.parametrize('topology', list(Topology))
def test_sandwich(topology):
    for m in range(3, 9):
        for n in range(3, 40):
            if topology is Topology.CYCLE and n == 4 and m >= 5:
                continue
            code, _ = construct(m, n, topology)
            assert lower_bound(m, n, topology) <= len(code) <= upper_bound(m, n, topology), (m, n)


def test_cycle_four_exceeds_upper_bound_for_many_rows():
    for m in range(5, 9):
        code, plan = construct(m, 4, Topology.CYCLE)
        assert plan.fallback
        assert len(code) == 4 * m > upper_bound(m, 4, Topology.CYCLE)


def test_density_profile_is_sandwiched():
    for topology in Topology:
        rows = density_profile(4, 30, topology)
        assert [row.n for row in rows] == list(range(3, 31))
        for row in rows:
            if topology is Topology.CYCLE and row.n == 4:
                continue
            assert row.density_lower <= row.density_construction <= row.density_upper


def test_density_profile_rejects_short_ranges():
    with pytest.raises(BoundsRangeError):
        density_profile(3, 6, Topology.PATH)
    with pytest.raises(BoundsRangeError):
        density_profile(2, 30, Topology.CYCLE)


def test_density_profile_example():
    rows = density_profile(3, 30, Topology.CYCLE)
    assert rows[-1].density_lower == Fraction(5, 9)


def test_large_cycle_density_is_close_to_a_third():
    code, _ = construct(100, 300, Topology.CYCLE)
    density = Fraction(len(code), 100 * 300)
    assert Fraction(1, 3) - Fraction(1, 1000) <= density <= Fraction(1, 3) + Fraction(1, 20)


@pytest.mark.parametrize('m', [3, 10, 30, 100])
def test_fixed_m_limits(m):
    low, high = fixed_m_limits(m)
    assert low == Fraction(m + 2, 3 * m)
    assert high == Fraction(m + 3, 3 * m)
    assert abs(low - Fraction(1, 3)) <= Fraction(2, 3 * m)
    for topology in Topology:
        record = bounds_record(m, 3000, topology)
        assert abs(record.density_lower - low) <= Fraction(1, 1000)


def test_gap_note_names_both_limits():
    note = density_gap_note(3)
    assert '5/9' in note and '2/3' in note


def test_sweep_rows():
    rows = sweep(range(3, 6), range(7, 31), Topology.PATH)
    assert len(rows) == 72
    assert [(row.m, row.n) for row in rows[:2]] == [(3, 7), (3, 8)]
    assert all(row.lower <= row.construction <= row.upper for row in rows)

    small = sweep([3], range(3, 7), Topology.PATH)
    assert [row.exact for row in small] == [9, 12, 12, 14]
