"""The main search loop: evaluate, eliminate, reconstruct, repeat.

Starting from a uniformly random roster, each iteration scores every
nurse's assignment, releases the unfit ones (plus a few fit ones at
random), and greedily repairs the roster.  The best penalized solution ever
seen is retained.  A single seeded rng stream drives initialization, both
eliminations and reconstruction in a documented order, so a run is fully
reproducible from (instance, config).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .eliminate import EliminationConfig, eliminate_at_random, eliminate_by_fitness
from .evaluate import EvalWeights, component_fitness_all, penalized_cost
from .model import Instance, Roster, compute_coverage
from .reconstruct import ReconstructionConfig, reconstruct

RNG_KIND = "mt19937"  # python random.Random; recorded in results for replay


@dataclass(frozen=True)
class SolverConfig:
    """Everything a run needs besides the instance itself.

    trajectory_stride samples the best-so-far cost every that many
    iterations (improvements are always recorded); 0 disables periodic
    samples, 1 records every iteration.
    """

    max_iterations: int = 50_000
    seed: int = 0
    eval_weights: EvalWeights = field(default_factory=EvalWeights)
    elim: EliminationConfig = field(default_factory=EliminationConfig)
    recon: ReconstructionConfig = field(default_factory=ReconstructionConfig)
    stop_at_known_optimal: bool = True
    trajectory_stride: int = 1000

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.trajectory_stride < 0:
            raise ValueError("trajectory_stride must be >= 0")


@dataclass
class RunResult:
    """Outcome of one seeded run."""

    best_cost: float
    best_roster: Roster
    best_feasible: bool
    iterations_executed: int
    iteration_of_best: int
    wall_time: float
    seed: int
    rng_kind: str = RNG_KIND
    trajectory: list[tuple[int, float]] = field(default_factory=list)


def initial_roster(instance: Instance, rng: random.Random) -> Roster:
    """Uniform random pattern per nurse, drawn in ascending id order."""
    return Roster(
        [nurse.feasible[rng.randrange(len(nurse.feasible))] for nurse in instance.nurses]
    )


def _check_config(instance: Instance, config: SolverConfig) -> None:
    if len(config.eval_weights.w_grade) < instance.g:
        raise ValueError(
            f"w_grade has {len(config.eval_weights.w_grade)} entries, "
            f"instance needs {instance.g}"
        )


def run(instance: Instance, config: SolverConfig) -> RunResult:
    """Full iterative search; deterministic given (instance, config).

    Stops after max_iterations passes, or as soon as a feasible solution
    with preference cost <= instance.known_optimal is found (when enabled
    and the optimum is known).
    """
    _check_config(instance, config)
    weights = config.eval_weights
    rng = random.Random(config.seed)
    started = time.perf_counter()

    roster = initial_roster(instance, rng)
    coverage = compute_coverage(instance, roster)
    cost = penalized_cost(instance, roster, weights, coverage=coverage)

    best_cost = cost
    best_roster = roster.copy()
    best_feasible = coverage.total_shortfall() == 0
    iteration_of_best = 0
    trajectory = [(0, best_cost)]
    stride = config.trajectory_stride

    def optimum_reached() -> bool:
        return (
            config.stop_at_known_optimal
            and instance.known_optimal is not None
            and best_feasible
            and best_cost <= instance.known_optimal
        )

    iterations = 0
    if not optimum_reached():
        for t in range(1, config.max_iterations + 1):
            iterations = t
            fitness = component_fitness_all(
                instance, roster, weights, coverage=coverage
            )
            if config.elim.enable_fitness_elim:
                partial = eliminate_by_fitness(roster, fitness, config.elim, rng)
            else:
                partial = roster.copy()
            if config.elim.enable_random_elim:
                partial = eliminate_at_random(partial, config.elim, rng)
            # keep the coverage state in sync with the released assignments
            for i, j in enumerate(partial.assignment):
                if j is None and roster.assignment[i] is not None:
                    coverage.remove(instance, i, roster.assignment[i])
            roster = reconstruct(
                instance, partial, config.recon, weights, rng, coverage=coverage
            )
            cost = penalized_cost(instance, roster, weights, coverage=coverage)

            if cost < best_cost:
                best_cost = cost
                best_roster = roster.copy()
                best_feasible = coverage.total_shortfall() == 0
                iteration_of_best = t
                trajectory.append((t, best_cost))
                if optimum_reached():
                    break
            elif stride and t % stride == 0:
                trajectory.append((t, best_cost))

    return RunResult(
        best_cost=best_cost,
        best_roster=best_roster,
        best_feasible=best_feasible,
        iterations_executed=iterations,
        iteration_of_best=iteration_of_best,
        wall_time=time.perf_counter() - started,
        seed=config.seed,
        trajectory=trajectory,
    )


def run_construction_only(instance: Instance, config: SolverConfig) -> RunResult:
    """Baseline: one greedy reconstruction pass from an empty roster, no loop."""
    _check_config(instance, config)
    weights = config.eval_weights
    rng = random.Random(config.seed)
    started = time.perf_counter()

    roster = reconstruct(
        instance, Roster.empty(instance.n), config.recon, weights, rng
    )
    coverage = compute_coverage(instance, roster)
    cost = penalized_cost(instance, roster, weights, coverage=coverage)

    return RunResult(
        best_cost=cost,
        best_roster=roster,
        best_feasible=coverage.total_shortfall() == 0,
        iterations_executed=0,
        iteration_of_best=0,
        wall_time=time.perf_counter() - started,
        seed=config.seed,
        trajectory=[(0, cost)],
    )
