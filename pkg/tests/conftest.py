"""Shared builders for hand-crafted test instances."""

from __future__ import annotations

import pytest

from nrp.model import N_PERIODS, Demand, Instance, Nurse, Roster, ShiftPattern


def pattern(pid: int, *periods: int) -> ShiftPattern:
    """Pattern working exactly the given period indices (0..13)."""
    mask = [False] * N_PERIODS
    for k in periods:
        mask[k] = True
    return ShiftPattern(pid, tuple(mask))


def flat_demand(g: int, value: int = 0) -> Demand:
    return Demand(tuple((value,) * g for _ in range(N_PERIODS)))


def demand_rows(rows) -> Demand:
    return Demand(tuple(tuple(row) for row in rows))


def make_instance(patterns, nurses, demand, g=None, known_optimal=None) -> Instance:
    g = g if g is not None else len(demand.r[0])
    return Instance(
        n=len(nurses),
        m=len(patterns),
        g=g,
        patterns=list(patterns),
        nurses=list(nurses),
        demand=demand,
        known_optimal=known_optimal,
    )


@pytest.fixture
def week_instance() -> Instance:
    """Three nurses, two grades, day/night split; feasible by construction.

    Pattern 0 works Mon-Fri days, pattern 1 Mon-Fri nights, pattern 2
    Sat-Sun days, pattern 3 Wed night only.
    """
    patterns = [
        pattern(0, 0, 1, 2, 3, 4),
        pattern(1, 7, 8, 9, 10, 11),
        pattern(2, 5, 6),
        pattern(3, 9),
    ]
    nurses = [
        Nurse(0, 1, (0, 2), {0: 10, 2: 40}),
        Nurse(1, 2, (1, 3), {1: 0, 3: 25}),
        Nurse(2, 2, (0, 1, 2), {0: 5, 1: 30, 2: 0}),
    ]
    demand = demand_rows(
        [[0, 1]] * 5 + [[0, 0]] * 2 + [[0, 1]] * 5 + [[0, 0]] * 2
    )
    return make_instance(patterns, nurses, demand)


def complete_roster(instance: Instance, choices: list[int]) -> Roster:
    assert len(choices) == instance.n
    return Roster(list(choices))
