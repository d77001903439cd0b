"""Greedy repair of a partial roster back to a complete one.

Freed nurses are processed in ascending id order.  For each one a rule is
drawn: the cover rule picks the feasible pattern plugging the most holes at
the worst understaffed band the nurse can serve, the combined rule trades
preference cost against shortfall reduction, and the random rule picks any
feasible pattern.  Existing assignments are never touched, and coverage is
updated after every assignment so later choices see earlier ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .evaluate import EvalWeights
from .model import CoverageState, Instance, InvalidRosterError, Roster, compute_coverage

E_MODES = ("indicator", "shortfall")


@dataclass(frozen=True)
class ReconstructionConfig:
    """Rule probabilities for {cover, combined, random} plus the e-term mode.

    e_mode chooses how the combined rule scores an understaffed period:
    "indicator" counts it once, "shortfall" weights it by the number of
    nurses still missing.
    """

    p1: float = 0.80
    p2: float = 0.18
    p3: float = 0.02
    e_mode: str = "indicator"

    def __post_init__(self) -> None:
        if min(self.p1, self.p2, self.p3) < 0:
            raise ValueError("rule probabilities must be nonnegative")
        if abs(self.p1 + self.p2 + self.p3 - 1.0) > 1e-12:
            raise ValueError("p1 + p2 + p3 must equal 1")
        if self.e_mode not in E_MODES:
            raise ValueError(f"e_mode must be one of {E_MODES}")


def cover_value(
    instance: Instance, coverage: CoverageState, i: int, j: int
) -> int:
    """How many currently-short periods pattern j fills at the focus band.

    The focus band is the highest-priority (lowest-numbered) band the nurse
    is qualified for that still has any shortfall; only that band's short
    periods are counted, so higher-graded nurses do not burn their value on
    demand a lower grade could meet.  Zero when no band the nurse can serve
    is short.
    """
    nurse = instance.nurses[i]
    if j not in nurse.feasible_set:
        raise InvalidRosterError(f"pattern {j} is not feasible for nurse {i}")
    band_short = coverage.band_short
    focus = -1
    for s in range(nurse.grade - 1, instance.g):
        if band_short[s] > 0:
            focus = s
            break
    if focus < 0:
        return 0
    shortfall = coverage.shortfall
    return sum(1 for k in instance.patterns[j].periods if shortfall[k][focus] > 0)


def combined_score(
    instance: Instance,
    coverage: CoverageState,
    weights: EvalWeights,
    i: int,
    j: int,
    e_mode: str = "indicator",
) -> float:
    """Weighted blend of pattern cheapness and shortfall reduction.

    Score = w_p * (100 - cost) + sum over qualified bands s of
    w_grade[s] * (short periods the pattern covers at band s).
    """
    nurse = instance.nurses[i]
    if j not in nurse.feasible_set:
        raise InvalidRosterError(f"pattern {j} is not feasible for nurse {i}")
    if len(weights.w_grade) < instance.g:
        raise ValueError(
            f"w_grade has {len(weights.w_grade)} entries, instance needs {instance.g}"
        )
    score = weights.w_p * (100 - nurse.pref_cost[j])
    shortfall = coverage.shortfall
    w_grade = weights.w_grade
    indicator = e_mode == "indicator"
    for s in range(nurse.grade - 1, instance.g):
        ws = w_grade[s]
        if ws == 0:
            continue
        gain = 0
        for k in instance.patterns[j].periods:
            short = shortfall[k][s]
            if short > 0:
                gain += 1 if indicator else short
        score += ws * gain
    return score


def reconstruct(
    instance: Instance,
    roster: Roster,
    config: ReconstructionConfig,
    weights: EvalWeights,
    rng: random.Random,
    coverage: CoverageState | None = None,
) -> Roster:
    """Assign every freed nurse a pattern; existing assignments are kept.

    Per freed nurse (ascending id) one uniform draw selects the rule; the
    random rule consumes one extra draw to index the feasible set.  Ties on
    rule scores go to the first pattern in the nurse's feasible list.  When a
    coverage state is passed in it must match the input roster and is updated
    in place to match the returned complete roster.
    """
    result = roster.copy()
    free = result.unassigned_ids()
    if not free:
        return result
    if coverage is None:
        coverage = compute_coverage(instance, roster)
    p1, p2 = config.p1, config.p2
    e_mode = config.e_mode

    for i in free:
        nurse = instance.nurses[i]
        u = rng.random()
        if u < p1:
            choice = _argmax_cover(instance, coverage, nurse)
        elif u < p1 + p2:
            choice = _argmax_combined(instance, coverage, weights, nurse, e_mode)
        else:
            choice = nurse.feasible[rng.randrange(len(nurse.feasible))]
        result.assignment[i] = choice
        coverage.add(instance, i, choice)
    return result


def _argmax_cover(instance: Instance, coverage: CoverageState, nurse) -> int:
    best_j = nurse.feasible[0]
    best = cover_value(instance, coverage, nurse.id, best_j)
    for j in nurse.feasible[1:]:
        value = cover_value(instance, coverage, nurse.id, j)
        if value > best:
            best, best_j = value, j
    return best_j


def _argmax_combined(
    instance: Instance, coverage: CoverageState, weights: EvalWeights, nurse, e_mode: str
) -> int:
    best_j = nurse.feasible[0]
    best = combined_score(instance, coverage, weights, nurse.id, best_j, e_mode)
    for j in nurse.feasible[1:]:
        score = combined_score(instance, coverage, weights, nurse.id, j, e_mode)
        if score > best:
            best, best_j = score, j
    return best_j
