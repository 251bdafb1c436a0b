# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled solver kernels: exhaustive k-subset scan and branch-and-bound.

Mirrors _purekernels exactly, including tie-breaking: electives arrive sorted
by id and the first minimum found in lexicographic order wins.
"""

from libc.math cimport fabs, INFINITY
from libc.stdlib cimport free, malloc

import numpy as np


def exhaustive_min(cE, credits, base, base_credits, target, int k):
    """Scan all k-subsets in lexicographic order; return (combo, objective)."""
    cdef double[:, ::1] ce = np.ascontiguousarray(cE, dtype=np.float64)
    cdef double[::1] cr = np.ascontiguousarray(credits, dtype=np.float64)
    cdef double[::1] bs = np.ascontiguousarray(base, dtype=np.float64)
    cdef double[::1] tg = np.ascontiguousarray(target, dtype=np.float64)
    cdef double cm = base_credits
    cdef int n = ce.shape[0]
    cdef int m = ce.shape[1]
    cdef int i, j, depth
    cdef double obj, den, best_obj = INFINITY

    if k <= 0 or k > n:
        return (), INFINITY

    # prefix sums along the current combination counter: partial[d] holds the
    # numerator/denominator after including the first d chosen electives
    cdef double *partial_num = <double *> malloc((k + 1) * m * sizeof(double))
    cdef double *partial_den = <double *> malloc((k + 1) * sizeof(double))
    cdef int *idx = <int *> malloc(k * sizeof(int))
    cdef int *best_idx = <int *> malloc(k * sizeof(int))
    if partial_num == NULL or partial_den == NULL or idx == NULL or best_idx == NULL:
        free(partial_num); free(partial_den); free(idx); free(best_idx)
        raise MemoryError()

    try:
        for j in range(m):
            partial_num[j] = bs[j]
        partial_den[0] = cm
        for depth in range(k):
            idx[depth] = depth
        # fill prefix state for the initial combination
        for depth in range(k):
            _extend(partial_num, partial_den, ce, cr, idx[depth], depth, m)

        while True:
            den = partial_den[k]
            obj = 0.0
            for j in range(m):
                obj += fabs(partial_num[k * m + j] / den - tg[j])
            if obj < best_obj:
                best_obj = obj
                for depth in range(k):
                    best_idx[depth] = idx[depth]
            # advance to the next combination in lexicographic order
            depth = k - 1
            while depth >= 0 and idx[depth] == n - k + depth:
                depth -= 1
            if depth < 0:
                break
            idx[depth] += 1
            _extend(partial_num, partial_den, ce, cr, idx[depth], depth, m)
            for i in range(depth + 1, k):
                idx[i] = idx[i - 1] + 1
                _extend(partial_num, partial_den, ce, cr, idx[i], i, m)

        combo = tuple(best_idx[depth] for depth in range(k))
        return combo, best_obj
    finally:
        free(partial_num)
        free(partial_den)
        free(idx)
        free(best_idx)


cdef inline void _extend(double *partial_num, double *partial_den,
                         double[:, ::1] ce, double[::1] cr,
                         int item, int depth, int m) noexcept:
    cdef int j
    for j in range(m):
        partial_num[(depth + 1) * m + j] = partial_num[depth * m + j] + ce[item, j]
    partial_den[depth + 1] = partial_den[depth] + cr[item]


def bnb_min(cE, credits, base, base_credits, target, int k):
    """Depth-first include/exclude search with an admissible per-area bound."""
    cdef double[:, ::1] ce = np.ascontiguousarray(cE, dtype=np.float64)
    cdef double[::1] cr = np.ascontiguousarray(credits, dtype=np.float64)
    cdef double[::1] bs = np.ascontiguousarray(base, dtype=np.float64)
    cdef double[::1] tg = np.ascontiguousarray(target, dtype=np.float64)
    cdef double cm = base_credits
    cdef int n = ce.shape[0]
    cdef int m = ce.shape[1]
    cdef int pos, j, r

    if k <= 0 or k > n:
        return (), INFINITY

    # top_sums[(pos*m + j)*(k+1) + r]: sum of the r largest ce[pos:, j]
    # small_credit_sums[pos*(k+1) + r]: sum of the r smallest credits[pos:]
    top_np = np.zeros(((n + 1) * m, k + 1))
    small_np = np.zeros((n + 1, k + 1))
    for pos in range(n + 1):
        suffix = np.asarray(ce)[pos:]
        for j in range(m):
            column = np.sort(suffix[:, j])[::-1]
            take = min(k, column.shape[0])
            top_np[pos * m + j, 1 : take + 1] = np.cumsum(column[:take])
            if take < k:
                top_np[pos * m + j, take + 1 :] = top_np[pos * m + j, take]
        credit_suffix = np.sort(np.asarray(cr)[pos:])
        take = min(k, credit_suffix.shape[0])
        small_np[pos, 1 : take + 1] = np.cumsum(credit_suffix[:take])
        if take < k:
            small_np[pos, take + 1 :] = small_np[pos, take]
    cdef double[:, ::1] top_sums = np.ascontiguousarray(top_np)
    cdef double[:, ::1] small_sums = np.ascontiguousarray(small_np)

    cdef double *num_stack = <double *> malloc((k + 1) * m * sizeof(double))
    cdef double *cred_stack = <double *> malloc((k + 1) * sizeof(double))
    cdef int *chosen = <int *> malloc(k * sizeof(int))
    cdef int *best_idx = <int *> malloc(k * sizeof(int))
    if num_stack == NULL or cred_stack == NULL or chosen == NULL or best_idx == NULL:
        free(num_stack); free(cred_stack); free(chosen); free(best_idx)
        raise MemoryError()

    cdef double best_obj = INFINITY
    try:
        for j in range(m):
            num_stack[j] = bs[j]
        cred_stack[0] = 0.0
        best_obj = _bnb_visit(0, 0, ce, cr, tg, cm, k, n, m,
                              num_stack, cred_stack, chosen, best_idx,
                              top_sums, small_sums, INFINITY)
        combo = tuple(best_idx[j] for j in range(k))
        return combo, best_obj
    finally:
        free(num_stack)
        free(cred_stack)
        free(chosen)
        free(best_idx)


cdef double _bnb_visit(int pos, int taken,
                       double[:, ::1] ce, double[::1] cr, double[::1] tg,
                       double cm, int k, int n, int m,
                       double *num_stack, double *cred_stack,
                       int *chosen, int *best_idx,
                       double[:, ::1] top_sums, double[:, ::1] small_sums,
                       double best_obj) noexcept:
    cdef int j, r
    cdef double obj, den, bound, attainable, gap

    if taken == k:
        den = cm + cred_stack[taken]
        obj = 0.0
        for j in range(m):
            obj += fabs(num_stack[taken * m + j] / den - tg[j])
        if obj < best_obj:
            for j in range(k):
                best_idx[j] = chosen[j]
            return obj
        return best_obj

    r = k - taken
    if n - pos < r:
        return best_obj

    if best_obj < INFINITY:
        den = cm + cred_stack[taken] + small_sums[pos, r]
        bound = 0.0
        for j in range(m):
            attainable = (num_stack[taken * m + j] + top_sums[pos * m + j, r]) / den
            gap = tg[j] - attainable
            if gap > 0:
                bound += gap
        if bound >= best_obj:
            return best_obj

    # include pos first: lexicographic exploration keeps the smallest tie
    chosen[taken] = pos
    for j in range(m):
        num_stack[(taken + 1) * m + j] = num_stack[taken * m + j] + ce[pos, j]
    cred_stack[taken + 1] = cred_stack[taken] + cr[pos]
    best_obj = _bnb_visit(pos + 1, taken + 1, ce, cr, tg, cm, k, n, m,
                          num_stack, cred_stack, chosen, best_idx,
                          top_sums, small_sums, best_obj)
    best_obj = _bnb_visit(pos + 1, taken, ce, cr, tg, cm, k, n, m,
                          num_stack, cred_stack, chosen, best_idx,
                          top_sums, small_sums, best_obj)
    return best_obj
