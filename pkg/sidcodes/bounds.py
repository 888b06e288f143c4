"""Closed-form bounds, exact small values and densities.

All arithmetic is integer or :class:`fractions.Fraction`; floats appear only
when rows are rendered to CSV.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Optional

from sidcodes.constructions import construct
from sidcodes.errors import BoundsRangeError, BudgetExceededError
from sidcodes.graph import build_product_graph
from sidcodes.models import BoundsRecord, DensityRow, SweepRow, Topology

logger = logging.getLogger(__name__)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_range(m: int, n: int, topology: Topology) -> Topology:
    topology = Topology(topology)
    if m < 3 or n < 3:
        raise BoundsRangeError(f'Bounds are known for m >= 3 and n >= 3, got ({m}, {n}) on a {topology.value}.')
    return topology


def exact_small_value(m: int, n: int) -> Optional[int]:
    """Exact minimum code size on K_m x P_n for 3 <= n <= 6, else None."""
    if m < 3 or not 3 <= n <= 6:
        return None
    if m == 3:
        return {3: 9, 4: 12, 5: 12, 6: 14}[n]
    if n == 3:
        return 2 * m + 3
    if n == 4:
        return 2 * m + 6
    if m <= 5:
        return 2 * m + 6 if n == 5 else 4 * m
    return 3 * m if n == 5 else 3 * m + 6


def lower_bound(m: int, n: int, topology: Topology) -> int:
    topology = _check_range(m, n, topology)
    if topology is Topology.PATH:
        if n <= 6:
            return exact_small_value(m, n)
        return _ceil_div(n + 1, 3) * (m + 2) - 2
    return (n // 3) * (m + 2)


def upper_bound(m: int, n: int, topology: Topology) -> int:
    topology = _check_range(m, n, topology)
    if topology is Topology.PATH:
        if n <= 6:
            return exact_small_value(m, n)
        return _ceil_div(n + 1, 3) * (m + 3) + m
    return _ceil_div(n, 3) * (m + 3) + 3


def path_construction_size(m: int, n: int) -> int:
    """Size of the general path construction, as a formula."""
    k, r = divmod(n, 3)
    return (k + 1) * (m + 3) + (m if r == 2 else 0)


def bounds_record(m: int, n: int, topology: Topology) -> BoundsRecord:
    topology = _check_range(m, n, topology)
    lower = lower_bound(m, n, topology)
    upper = upper_bound(m, n, topology)
    exact = exact_small_value(m, n) if topology is Topology.PATH else None
    if topology is Topology.PATH and n <= 6:
        source = {'lower': 'small-path-exact', 'upper': 'small-path-exact', 'exact': 'small-path-exact'}
    elif topology is Topology.PATH:
        source = {'lower': 'path-triple-column', 'upper': 'path-construction'}
    else:
        source = {'lower': 'cycle-triple-column', 'upper': 'cycle-construction'}
    size = m * n
    return BoundsRecord(
        m=m, n=n, topology=topology, lower=lower, upper=upper, exact=exact, source=source,
        density_lower=Fraction(lower, size), density_upper=Fraction(upper, size),
    )


def fixed_m_limits(m: int) -> tuple[Fraction, Fraction]:
    """Limits of the lower and upper density bounds as n grows with m fixed."""
    return Fraction(m + 2, 3 * m), Fraction(m + 3, 3 * m)


def density_gap_note(m: int) -> str:
    low, high = fixed_m_limits(m)
    return (
        f'For fixed m={m} the density bounds tend to {low} and {high} as n grows; '
        f'both exceed 1/3 by {low - Fraction(1, 3)} and {high - Fraction(1, 3)}, '
        'so the density reaches 1/3 only as m grows as well.'
    )


def density_profile(m: int, n_max: int, topology: Topology) -> list[DensityRow]:
    topology = Topology(topology)
    floor = 7 if topology is Topology.PATH else 3
    if m < 3 or n_max < floor:
        raise BoundsRangeError(f'Density profiles need m >= 3 and n_max >= {floor}, got ({m}, {n_max}).')
    rows = []
    for n in range(3, n_max + 1):
        code, _ = construct(m, n, topology)
        size = m * n
        rows.append(DensityRow(
            n=n,
            density_lower=Fraction(lower_bound(m, n, topology), size),
            density_construction=Fraction(len(code), size),
            density_upper=Fraction(upper_bound(m, n, topology), size),
        ))
    logger.warning(density_gap_note(m))
    return rows


def sweep(m_values: Iterable[int], n_values: Iterable[int], topology: Topology) -> list[SweepRow]:
    """One row per (m, n), ordered by m then n."""
    topology = Topology(topology)
    n_values = list(n_values)
    rows = []
    for m in m_values:
        for n in n_values:
            record = bounds_record(m, n, topology)
            code, _ = construct(m, n, topology)
            rows.append(SweepRow(
                m=m, n=n, topology=topology,
                lower=record.lower, construction=len(code), upper=record.upper, exact=record.exact,
                density_lower=record.density_lower,
                density_construction=Fraction(len(code), m * n),
                density_upper=record.density_upper,
            ))
    return rows


def compare_gamma_id(m: int, n: int, topology: Topology, budget=None) -> tuple[int, int]:
    """Certified minimum identifying and self-identifying code sizes."""
    from sidcodes.solver import solve_min_id, solve_min_sid

    graph = build_product_graph(m, n, topology)
    identifying = solve_min_id(graph, budget)
    self_identifying = solve_min_sid(graph, budget)
    if not (identifying.certified and self_identifying.certified):
        raise BudgetExceededError(f'Could not certify both optima on {graph} within the budget.')
    return identifying.optimum, self_identifying.optimum
