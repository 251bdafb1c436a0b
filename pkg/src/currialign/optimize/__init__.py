"""Constrained elective-selection solvers.

Hot kernels live in the compiled extension ``_speedups``; a pure-Python twin
is selected automatically when the extension is unavailable.
"""

from .solvers import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_SWAP_ROUNDS,
    USING_COMPILED,
    SelectionProblem,
    SelectionResult,
    objective,
    solve_branch_and_bound,
    solve_exhaustive,
    solve_heuristic,
)

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_SWAP_ROUNDS",
    "USING_COMPILED",
    "SelectionProblem",
    "SelectionResult",
    "objective",
    "solve_branch_and_bound",
    "solve_exhaustive",
    "solve_heuristic",
]
