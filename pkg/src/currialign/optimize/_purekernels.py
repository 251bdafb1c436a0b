"""Pure-Python solver kernels.

Fallback for the compiled extension; both implementations must return
identical selections and objectives on every instance (the test suite holds
them to that).  Electives arrive pre-sorted by id, so "first minimum found"
equals the lexicographically smallest tie-broken selection.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

_CHUNK = 1 << 15


def exhaustive_min(cE, credits, base, base_credits, target, k):
    """Scan all k-subsets in lexicographic order; return (combo, objective).

    cE is the (n, 9) matrix of credit-scaled elective distributions, base the
    credit-scaled mandatory vector.
    """
    n = cE.shape[0]
    best_obj = np.inf
    best_combo: tuple[int, ...] = ()
    # chunked vectorized evaluation, first minimum wins ties
    iterator = combinations(range(n), k)
    while True:
        block = []
        for combo in iterator:
            block.append(combo)
            if len(block) >= _CHUNK:
                break
        if not block:
            break
        idx = np.asarray(block, dtype=np.intp)
        numerators = base + cE[idx].sum(axis=1)
        denominators = base_credits + credits[idx].sum(axis=1)
        objectives = np.abs(numerators / denominators[:, None] - target).sum(axis=1)
        pos = int(np.argmin(objectives))
        if objectives[pos] < best_obj:
            best_obj = float(objectives[pos])
            best_combo = tuple(int(i) for i in block[pos])
    return best_combo, best_obj


def bnb_min(cE, credits, base, base_credits, target, k):
    """Depth-first include/exclude search with an admissible per-area bound.

    The bound assumes the most favorable completion per Knowledge Area: the
    numerator gains the r largest remaining credit-scaled masses while the
    denominator only grows by the r smallest remaining credits, so the bound
    never exceeds the true objective of any completion.
    """
    n = cE.shape[0]
    cE = np.ascontiguousarray(cE, dtype=float)
    credits = np.ascontiguousarray(credits, dtype=float)
    target = np.ascontiguousarray(target, dtype=float)

    # top_sums[pos][j][r]: sum of the r largest cE[pos:, j]
    top_sums = []
    small_credit_sums = []
    for pos in range(n + 1):
        suffix = cE[pos:]
        per_area = []
        for j in range(cE.shape[1]):
            column = np.sort(suffix[:, j])[::-1]
            per_area.append(np.concatenate([[0.0], np.cumsum(column)]))
        top_sums.append(per_area)
        credit_suffix = np.sort(credits[pos:])
        small_credit_sums.append(np.concatenate([[0.0], np.cumsum(credit_suffix)]))

    best = {"obj": np.inf, "combo": ()}
    chosen: list[int] = []

    def visit(pos: int, num: np.ndarray, sel_credits: float) -> None:
        taken = len(chosen)
        if taken == k:
            obj = float(np.abs(num / (base_credits + sel_credits) - target).sum())
            if obj < best["obj"]:
                best["obj"] = obj
                best["combo"] = tuple(chosen)
            return
        remaining_needed = k - taken
        if n - pos < remaining_needed:
            return
        if best["obj"] < np.inf:
            den_min = base_credits + sel_credits + small_credit_sums[pos][remaining_needed]
            bound = 0.0
            per_area = top_sums[pos]
            for j in range(cE.shape[1]):
                attainable = (num[j] + per_area[j][remaining_needed]) / den_min
                gap = target[j] - attainable
                if gap > 0:
                    bound += gap
            if bound >= best["obj"]:
                return
        chosen.append(pos)
        visit(pos + 1, num + cE[pos], sel_credits + credits[pos])
        chosen.pop()
        visit(pos + 1, num, sel_credits)

    visit(0, np.array(base, dtype=float), 0.0)
    return best["combo"], best["obj"]
