"""Exact solver for desk-scale instances, used as ground truth in tests.

Plain depth-first branch and bound over nurses in id order.  Patterns are
tried cheapest-first within each nurse.  A branch is cut when its partial
preference cost already matches the incumbent, or when the nurses still to
be scheduled could not plug some existing shortfall even if every one of
them helped (an optimistic counting bound, coarse but sound).  Intended for
roughly n <= 10 with small feasible sets; a node budget turns runaway
searches into an explicit timeout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import N_PERIODS, CoverageState, Instance, Roster

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
TIMEOUT = "timeout"


@dataclass
class ExactResult:
    """Outcome of an exhaustive search.

    On OPTIMAL the roster is feasible, its preference cost equals
    optimal_cost, and no feasible roster costs less.  On TIMEOUT the
    incumbent (if any) is reported without an optimality claim.
    """

    status: str
    optimal_cost: int | None
    optimal_roster: Roster | None
    nodes_explored: int


def _suffix_cover_counts(instance: Instance) -> list[list[list[int]]]:
    """counts[d][k][s]: nurses with id >= d able to add cover at (k, band s+1)."""
    g = instance.g
    counts = [[[0] * g for _ in range(N_PERIODS)] for _ in range(instance.n + 1)]
    for d in range(instance.n - 1, -1, -1):
        nurse = instance.nurses[d]
        reachable = set()
        for j in nurse.feasible:
            reachable.update(instance.patterns[j].periods)
        for k in range(N_PERIODS):
            row = counts[d][k]
            nxt = counts[d + 1][k]
            can = k in reachable
            for s in range(g):
                row[s] = nxt[s] + (1 if can and nurse.grade - 1 <= s else 0)
    return counts


def exact_solve(instance: Instance, node_budget: int = 10_000_000) -> ExactResult:
    """Minimum-cost feasible roster, INFEASIBLE if none, TIMEOUT on budget."""
    n, g = instance.n, instance.g
    suffix = _suffix_cover_counts(instance)
    # cheapest-first ordering sharpens the cost bound; ties keep list order
    ordered = [
        sorted(nurse.feasible, key=lambda j, nurse=nurse: nurse.pref_cost[j])
        for nurse in instance.nurses
    ]

    coverage = CoverageState.empty(instance)
    assignment: list[int | None] = [None] * n
    best_cost: int | None = None
    best_assignment: list[int] | None = None
    nodes = 0
    out_of_budget = False

    def coverage_bound_ok(depth: int) -> bool:
        shortfall = coverage.shortfall
        avail = suffix[depth]
        for k in range(N_PERIODS):
            short_k = shortfall[k]
            avail_k = avail[k]
            for s in range(g):
                if short_k[s] > avail_k[s]:
                    return False
        return True

    def search(depth: int, cost: int) -> None:
        nonlocal best_cost, best_assignment, nodes, out_of_budget
        if out_of_budget:
            return
        if depth == n:
            if coverage.total_shortfall() == 0 and (
                best_cost is None or cost < best_cost
            ):
                best_cost = cost
                best_assignment = list(assignment)  # type: ignore[arg-type]
            return
        if not coverage_bound_ok(depth):
            return
        nurse = instance.nurses[depth]
        for j in ordered[depth]:
            new_cost = cost + nurse.pref_cost[j]
            if best_cost is not None and new_cost >= best_cost:
                break  # patterns are cost-sorted: the rest only cost more
            nodes += 1
            if nodes > node_budget:
                out_of_budget = True
                return
            assignment[depth] = j
            coverage.add(instance, depth, j)
            search(depth + 1, new_cost)
            coverage.remove(instance, depth, j)
            assignment[depth] = None
            if out_of_budget:
                return

    search(0, 0)

    if out_of_budget:
        return ExactResult(
            status=TIMEOUT,
            optimal_cost=best_cost,
            optimal_roster=(
                Roster(list(best_assignment)) if best_assignment is not None else None
            ),
            nodes_explored=nodes,
        )
    if best_assignment is None:
        return ExactResult(INFEASIBLE, None, None, nodes)
    return ExactResult(OPTIMAL, best_cost, Roster(list(best_assignment)), nodes)
