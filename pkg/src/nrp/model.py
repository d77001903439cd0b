"""Domain model for the weekly ward rostering problem.

A week is 14 periods: indices 0..6 are the day shifts Mon..Sun, indices
7..13 the night shifts Mon..Sun.  Each nurse works exactly one shift
pattern out of her personal feasible set, and staffing demand is given
per (period, grade band).  Grade bands are numbered 1..g with 1 the
highest qualification; a nurse of grade q counts toward every band
s >= q, so demand figures are cumulative across bands.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

N_PERIODS = 14  # 7 day shifts followed by 7 night shifts


class RosterError(ValueError):
    """Base class for roster-related contract violations."""


class InvalidRosterError(RosterError):
    """An assignment refers to a pattern outside the nurse's feasible set."""


class IncompleteRosterError(RosterError):
    """An operation that requires a complete roster got a partial one."""


@dataclass(frozen=True)
class ShiftPattern:
    """One weekly work pattern: which of the 14 periods are worked."""

    id: int
    mask: tuple[bool, ...]
    # indices of worked periods, precomputed for the scoring loops
    periods: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.mask) != N_PERIODS:
            raise ValueError(f"pattern {self.id}: mask must have {N_PERIODS} entries")
        object.__setattr__(
            self, "periods", tuple(k for k, on in enumerate(self.mask) if on)
        )


@dataclass(frozen=True)
class Nurse:
    """A nurse: qualification grade plus her feasible patterns and their costs.

    grade is 1-based with 1 the highest band.  pref_cost maps every feasible
    pattern id to a preference cost in [0, 100] (0 perfect, 100 unacceptable).
    """

    id: int
    grade: int
    feasible: tuple[int, ...]
    pref_cost: dict[int, int]
    feasible_set: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.feasible:
            raise ValueError(f"nurse {self.id}: feasible set is empty")
        if self.grade < 1:
            raise ValueError(f"nurse {self.id}: grade must be >= 1")
        fset = frozenset(self.feasible)
        if len(fset) != len(self.feasible):
            raise ValueError(f"nurse {self.id}: duplicate pattern in feasible set")
        if set(self.pref_cost) != fset:
            raise ValueError(
                f"nurse {self.id}: pref_cost keys must match the feasible set"
            )
        for j, cost in self.pref_cost.items():
            if not 0 <= cost <= 100:
                raise ValueError(
                    f"nurse {self.id}: cost {cost} for pattern {j} outside [0, 100]"
                )
        object.__setattr__(self, "feasible_set", fset)


@dataclass(frozen=True)
class Demand:
    """Required nurse counts, one row per period, one column per grade band.

    Column s-1 holds the demand for nurses of grade s or higher.  Rows are
    expected to be non-decreasing across bands (cumulative convention); a
    violation is tolerated but reported as a warning.
    """

    r: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.r) != N_PERIODS:
            raise ValueError(f"demand must have {N_PERIODS} rows")
        width = len(self.r[0])
        if width < 1:
            raise ValueError("demand must have at least one grade column")
        for k, row in enumerate(self.r):
            if len(row) != width:
                raise ValueError(f"demand row {k}: expected {width} entries")
            for value in row:
                if value < 0:
                    raise ValueError(f"demand row {k}: negative entry")
            if any(row[s] > row[s + 1] for s in range(width - 1)):
                warnings.warn(
                    f"demand row {k} is not non-decreasing across grade bands; "
                    "demands are interpreted as cumulative",
                    stacklevel=2,
                )


@dataclass
class Instance:
    """A full rostering problem instance.

    known_optimal, when present, is the verified minimum preference cost of a
    feasible roster; it drives early stopping and batch statistics.
    """

    n: int
    m: int
    g: int
    patterns: list[ShiftPattern]
    nurses: list[Nurse]
    demand: Demand
    known_optimal: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1 or self.g < 1:
            raise ValueError("n, m and g must all be >= 1")
        if len(self.patterns) != self.m:
            raise ValueError(f"expected {self.m} patterns, got {len(self.patterns)}")
        if len(self.nurses) != self.n:
            raise ValueError(f"expected {self.n} nurses, got {len(self.nurses)}")
        for idx, pattern in enumerate(self.patterns):
            if pattern.id != idx:
                raise ValueError(f"pattern ids must be dense: slot {idx} holds id {pattern.id}")
        for idx, nurse in enumerate(self.nurses):
            if nurse.id != idx:
                raise ValueError(f"nurse ids must be dense: slot {idx} holds id {nurse.id}")
            if nurse.grade > self.g:
                raise ValueError(f"nurse {idx}: grade {nurse.grade} exceeds g={self.g}")
            for j in nurse.feasible:
                if not 0 <= j < self.m:
                    raise ValueError(f"nurse {idx} references unknown pattern {j}")
        if len(self.demand.r[0]) != self.g:
            raise ValueError(
                f"demand has {len(self.demand.r[0])} grade columns, expected {self.g}"
            )


@dataclass
class Roster:
    """One (possibly partial) assignment of a pattern id per nurse.

    None marks a nurse awaiting (re)assignment.
    """

    assignment: list[int | None]

    @classmethod
    def empty(cls, n: int) -> "Roster":
        return cls([None] * n)

    def copy(self) -> "Roster":
        return Roster(self.assignment[:])

    def is_complete(self) -> bool:
        return None not in self.assignment

    def unassigned_ids(self) -> list[int]:
        return [i for i, j in enumerate(self.assignment) if j is None]


class CoverageState:
    """Per-(period, band) nurse counts against demand, maintained incrementally.

    covered[k][s] counts assigned nurses qualified for band s+1 working
    period k; shortfall[k][s] = max(demand - covered, 0); band_short[s] is
    the shortfall column total, kept for quick worst-band lookups.
    """

    __slots__ = ("covered", "shortfall", "band_short")

    def __init__(
        self,
        covered: list[list[int]],
        shortfall: list[list[int]],
        band_short: list[int],
    ) -> None:
        self.covered = covered
        self.shortfall = shortfall
        self.band_short = band_short

    @classmethod
    def empty(cls, instance: Instance) -> "CoverageState":
        covered = [[0] * instance.g for _ in range(N_PERIODS)]
        shortfall = [list(row) for row in instance.demand.r]
        band_short = [sum(row[s] for row in instance.demand.r) for s in range(instance.g)]
        return cls(covered, shortfall, band_short)

    def copy(self) -> "CoverageState":
        return CoverageState(
            [row[:] for row in self.covered],
            [row[:] for row in self.shortfall],
            self.band_short[:],
        )

    def total_shortfall(self) -> int:
        return sum(self.band_short)

    def add(self, instance: Instance, nurse_id: int, pattern_id: int) -> None:
        """Account for nurse nurse_id starting to work pattern pattern_id."""
        nurse = instance.nurses[nurse_id]
        if pattern_id not in nurse.feasible_set:
            raise InvalidRosterError(
                f"nurse {nurse_id} assigned pattern {pattern_id} outside A(i)"
            )
        demand = instance.demand.r
        lo, g = nurse.grade - 1, instance.g
        for k in instance.patterns[pattern_id].periods:
            covered_k = self.covered[k]
            shortfall_k = self.shortfall[k]
            demand_k = demand[k]
            for s in range(lo, g):
                covered_k[s] += 1
                if covered_k[s] <= demand_k[s]:
                    shortfall_k[s] -= 1
                    self.band_short[s] -= 1

    def remove(self, instance: Instance, nurse_id: int, pattern_id: int) -> None:
        """Account for nurse nurse_id being released from pattern pattern_id."""
        nurse = instance.nurses[nurse_id]
        demand = instance.demand.r
        lo, g = nurse.grade - 1, instance.g
        for k in instance.patterns[pattern_id].periods:
            covered_k = self.covered[k]
            shortfall_k = self.shortfall[k]
            demand_k = demand[k]
            for s in range(lo, g):
                covered_k[s] -= 1
                if covered_k[s] < demand_k[s]:
                    shortfall_k[s] += 1
                    self.band_short[s] += 1


def covers_grade(nurse: Nurse, band: int) -> bool:
    """True iff the nurse counts toward demand at grade band (1-based)."""
    return nurse.grade <= band


def compute_coverage(instance: Instance, roster: Roster) -> CoverageState:
    """Build the coverage state of a roster from scratch.

    Unassigned nurses contribute nothing.  Raises InvalidRosterError when an
    assignment falls outside the nurse's feasible set.
    """
    state = CoverageState.empty(instance)
    for i, j in enumerate(roster.assignment):
        if j is not None:
            state.add(instance, i, j)
    return state


def is_feasible(instance: Instance, roster: Roster) -> bool:
    """True iff the roster is complete and meets demand at every (period, band)."""
    if not roster.is_complete():
        return False
    return compute_coverage(instance, roster).total_shortfall() == 0


def preference_cost(instance: Instance, roster: Roster) -> int:
    """Total preference cost of a complete roster."""
    total = 0
    for i, j in enumerate(roster.assignment):
        if j is None:
            raise IncompleteRosterError(f"nurse {i} is unassigned")
        total += instance.nurses[i].pref_cost[j]
    return total
