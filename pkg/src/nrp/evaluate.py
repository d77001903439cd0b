"""Per-nurse fitness of a complete roster, and the penalized objective.

Each nurse's current assignment is scored on two normalized axes: how cheap
it is relative to the other current assignments, and how much demand
coverage would be lost if it were removed.  Both are rescaled to [0, 1]
against the minima/maxima over the current schedule only, so the fitness of
a component is always relative to the schedule it sits in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    CoverageState,
    IncompleteRosterError,
    Instance,
    Roster,
    compute_coverage,
    preference_cost,
)


@dataclass(frozen=True)
class EvalWeights:
    """Weights for component fitness, the repair score and the penalty term.

    w1/w2 blend the preference and coverage fitness parts and must sum to 1.
    w_demand is the penalty per uncovered (period, band) shift.  w_p and
    w_grade belong to the combined reconstruction rule: preference weight and
    one weight per grade band (band 1 first).
    """

    w1: float = 0.5
    w2: float = 0.5
    w_demand: float = 200.0
    w_p: float = 1.0
    w_grade: tuple[float, ...] = (8.0, 2.0, 1.0)

    def __post_init__(self) -> None:
        if abs(self.w1 + self.w2 - 1.0) > 1e-12:
            raise ValueError("w1 + w2 must equal 1")
        if self.w1 < 0 or self.w2 < 0:
            raise ValueError("w1 and w2 must be nonnegative")
        if self.w_demand <= 0:
            raise ValueError("w_demand must be positive")
        if self.w_p < 0:
            raise ValueError("w_p must be nonnegative")
        if any(w < 0 for w in self.w_grade):
            raise ValueError("grade weights must be nonnegative")


@dataclass(frozen=True)
class ComponentFitness:
    """Normalized fitness of one nurse's assignment within the schedule."""

    preference: float  # 1 = cheapest current assignment, 0 = most expensive
    coverage: float  # 1 = largest coverage contribution, 0 = smallest
    combined: float  # w1 * preference + w2 * coverage


def coverage_contribution(
    instance: Instance, roster: Roster, coverage: CoverageState, i: int
) -> int:
    """Count the (period, band) slots that would fall short without nurse i.

    A slot counts when nurse i's pattern covers the period, the nurse is
    qualified for the band, and coverage minus her contribution drops below
    demand there.
    """
    j = roster.assignment[i]
    if j is None:
        raise IncompleteRosterError(f"nurse {i} is unassigned")
    nurse = instance.nurses[i]
    demand = instance.demand.r
    covered = coverage.covered
    lo, g = nurse.grade - 1, instance.g
    value = 0
    for k in instance.patterns[j].periods:
        covered_k = covered[k]
        demand_k = demand[k]
        for s in range(lo, g):
            if covered_k[s] - 1 < demand_k[s]:
                value += 1
    return value


def component_fitness_all(
    instance: Instance,
    roster: Roster,
    weights: EvalWeights,
    coverage: CoverageState | None = None,
) -> list[ComponentFitness]:
    """Fitness of every nurse's assignment, all from the same snapshot.

    Normalization bounds are the min/max preference costs and coverage
    contributions among the n current assignments.  Degenerate bounds
    (all equal) pin the corresponding part to 0.5.
    """
    if not roster.is_complete():
        raise IncompleteRosterError("fitness is only defined for complete rosters")
    if coverage is None:
        coverage = compute_coverage(instance, roster)

    costs = [
        instance.nurses[i].pref_cost[j] for i, j in enumerate(roster.assignment)
    ]
    contribs = [
        coverage_contribution(instance, roster, coverage, i)
        for i in range(instance.n)
    ]

    p_min, p_max = min(costs), max(costs)
    c_min, c_max = min(contribs), max(contribs)
    p_span = p_max - p_min
    c_span = c_max - c_min
    w1, w2 = weights.w1, weights.w2

    result = []
    for cost, contrib in zip(costs, contribs):
        f1 = (p_max - cost) / p_span if p_span else 0.5
        f2 = (contrib - c_min) / c_span if c_span else 0.5
        result.append(ComponentFitness(f1, f2, w1 * f1 + w2 * f2))
    return result


def penalized_cost(
    instance: Instance,
    roster: Roster,
    weights: EvalWeights,
    coverage: CoverageState | None = None,
) -> float:
    """Preference cost plus w_demand per uncovered (period, band) shift."""
    cost = preference_cost(instance, roster)
    if coverage is None:
        coverage = compute_coverage(instance, roster)
    return cost + weights.w_demand * coverage.total_shortfall()
