"""Elective selection: choose exactly k electives minimizing the L1 gap
between the credit-weighted curriculum blend and a target distribution.

Three solvers share one contract: exhaustive enumeration (exact, capped),
branch and bound (exact, uncapped), and greedy-plus-swaps local search
(fast, not proven optimal).  Ties always break toward the lexicographically
smallest id sequence, so repeated solves are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from ..analysis import curriculum_distribution
from ..domain import KA_COUNT, KaDistribution, l1_distance
from ..errors import TooLargeError, UnknownElectiveIdError, WrongCardinalityError
from ..ingest import CurriculumProfile

try:
    from . import _speedups as _kernels

    USING_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    from . import _purekernels as _kernels

    USING_COMPILED = False

DEFAULT_ENUMERATION_CAP = 2_000_000
DEFAULT_SWAP_ROUNDS = 50


@dataclass(frozen=True)
class SelectionProblem:
    profile: CurriculumProfile
    target: KaDistribution
    k: int

    def __post_init__(self):
        if not 0 < self.k <= len(self.profile.electives):
            raise ValueError(f"k={self.k} outside 1..{len(self.profile.electives)}")


@dataclass(frozen=True)
class SelectionResult:
    chosen: tuple[str, ...]
    objective: float
    blended: KaDistribution
    method: str
    proven_optimal: bool


def objective(problem: SelectionProblem, selection: set[str]) -> float:
    """L1 deviation of the blended curriculum from the target."""
    if len(selection) != problem.k:
        raise WrongCardinalityError(problem.k, len(selection))
    blended = curriculum_distribution(problem.profile, set(selection))
    return l1_distance(blended, problem.target)


def _problem_arrays(problem: SelectionProblem):
    ids = sorted(e.id for e in problem.profile.electives)
    by_id = {e.id: e for e in problem.profile.electives}
    E = np.array([by_id[i].distribution.weights for i in ids])
    credits = np.array([by_id[i].credits for i in ids])
    if problem.profile.mandatory is None:
        base = np.zeros(KA_COUNT)
        base_credits = 0.0
    else:
        base = problem.profile.mandatory_credits * problem.profile.mandatory.as_array()
        base_credits = problem.profile.mandatory_credits
    target = problem.target.as_array()
    return ids, credits[:, None] * E, credits, base, base_credits, target


def _result(problem: SelectionProblem, ids, combo, method: str, proven: bool) -> SelectionResult:
    chosen = tuple(sorted(ids[i] for i in combo))
    blended = curriculum_distribution(problem.profile, set(chosen))
    return SelectionResult(
        chosen=chosen,
        objective=l1_distance(blended, problem.target),
        blended=blended,
        method=method,
        proven_optimal=proven,
    )


def solve_exhaustive(problem: SelectionProblem, cap: int = DEFAULT_ENUMERATION_CAP) -> SelectionResult:
    """Enumerate every k-subset; exact but bounded by the enumeration cap."""
    n = len(problem.profile.electives)
    if comb(n, problem.k) > cap:
        raise TooLargeError(
            f"C({n},{problem.k}) exceeds the enumeration cap {cap}; use solve_heuristic"
        )
    ids, cE, credits, base, base_credits, target = _problem_arrays(problem)
    combo, _ = _kernels.exhaustive_min(cE, credits, base, base_credits, target, problem.k)
    return _result(problem, ids, combo, "exhaustive", True)


def solve_branch_and_bound(problem: SelectionProblem) -> SelectionResult:
    """Exact solver pruning with an admissible per-area completion bound."""
    ids, cE, credits, base, base_credits, target = _problem_arrays(problem)
    combo, _ = _kernels.bnb_min(cE, credits, base, base_credits, target, problem.k)
    return _result(problem, ids, combo, "branch_and_bound", True)


def solve_heuristic(problem: SelectionProblem, swap_rounds: int = DEFAULT_SWAP_ROUNDS) -> SelectionResult:
    """Greedy forward selection followed by best-improvement 1-swaps."""
    if swap_rounds < 1:
        raise ValueError("swap_rounds must be positive")
    ids, cE, credits, base, base_credits, target = _problem_arrays(problem)
    n = len(ids)

    def partial_objective(index_set: frozenset[int]) -> float:
        num = base.copy()
        den = base_credits
        for i in index_set:
            num += cE[i]
            den += credits[i]
        return float(np.abs(num / den - target).sum())

    selected: set[int] = set()
    for _ in range(problem.k):
        best_i, best_obj = None, np.inf
        for i in range(n):
            if i in selected:
                continue
            obj = partial_objective(frozenset(selected | {i}))
            if obj < best_obj:
                best_i, best_obj = i, obj
        selected.add(best_i)

    current_obj = partial_objective(frozenset(selected))
    for _ in range(swap_rounds):
        best_swap, best_obj = None, current_obj
        for out in sorted(selected):
            for into in range(n):
                if into in selected:
                    continue
                obj = partial_objective(frozenset(selected - {out} | {into}))
                if obj < best_obj:
                    best_swap, best_obj = (out, into), obj
        if best_swap is None:
            break
        selected.remove(best_swap[0])
        selected.add(best_swap[1])
        current_obj = best_obj

    return _result(problem, ids, sorted(selected), "local_search", False)
