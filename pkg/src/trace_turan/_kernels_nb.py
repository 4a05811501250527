"""numba kernels over int64 bitmasks.

Every function mirrors one in ``_kernels_np`` and must return identical
results; ``kernels`` picks between them.
"""

import numpy as np
from numba import njit

from ._accel import NUMBA_OPTS


@njit(**NUMBA_OPTS)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(**NUMBA_OPTS)
def _low_index(x):
    low = x & -x
    i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i


@njit(**NUMBA_OPTS)
def _next_combination(x):
    c = x & -x
    r = x + c
    return (((r ^ x) >> 2) // c) | r


@njit(**NUMBA_OPTS)
def _dominated(edges, S):
    wit = 0
    for e in edges:
        i = e & S
        if i != 0 and (i & (i - 1)) == 0:
            wit |= i
            if wit == S:
                return True
    return wit == S


@njit(**NUMBA_OPTS)
def first_dominated_subset(edges, n, k):
    """Least mask of size k in which every member has a singleton witness, else -1."""
    if k == 0:
        return 0
    if k > n:
        return -1
    limit = np.int64(1) << n
    x = (np.int64(1) << k) - 1
    while x < limit:
        if _dominated(edges, x):
            return x
        x = _next_combination(x)
    return -1


@njit(**NUMBA_OPTS)
def _has_perfect_matching(adj, full, rem_stack, cand_stack):
    depth = 0
    rem_stack[0] = full
    cand_stack[0] = adj[_low_index(full)] & full
    while depth >= 0:
        cand = cand_stack[depth]
        if cand == 0:
            depth -= 1
            continue
        rem = rem_stack[depth]
        ubit = cand & -cand
        cand_stack[depth] = cand ^ ubit
        nrem = rem ^ (rem & -rem) ^ ubit
        if nrem == 0:
            return True
        depth += 1
        rem_stack[depth] = nrem
        cand_stack[depth] = adj[_low_index(nrem)] & nrem
    return False


@njit(**NUMBA_OPTS)
def first_matching_trace_set(edges, n, k):
    """Least 2k-set S whose exact-pair trace graph has a perfect matching, else -1."""
    size = 2 * k
    if size > n:
        return -1
    adj = np.zeros(n, np.int64)
    rem_stack = np.zeros(k + 1, np.int64)
    cand_stack = np.zeros(k + 1, np.int64)
    limit = np.int64(1) << n
    x = (np.int64(1) << size) - 1
    while x < limit:
        adj[:] = 0
        covered = 0
        for e in edges:
            i = e & x
            if i == 0:
                continue
            rest = i & (i - 1)
            if rest == 0 or (rest & (rest - 1)) != 0:
                continue
            a = _low_index(i)
            b = _low_index(rest)
            adj[a] |= np.int64(1) << b
            adj[b] |= np.int64(1) << a
            covered |= i
        if covered == x and _has_perfect_matching(adj, x, rem_stack, cand_stack):
            return x
        x = _next_combination(x)
    return -1


@njit(**NUMBA_OPTS)
def labeled_scan(pairbits, fam, tables, lo_bits):
    """Scan all edge subsets; return (best size, least best mask, #best, #good).

    ``pairbits[i, j]`` is the local pair bit edge i contributes on pattern set
    j; a subset is bad when some ``tables[fam[j], OR of its pairbits]`` holds.
    """
    m, J = pairbits.shape
    L = min(m, lo_bits)
    nlo = 1 << L
    pm_lo = np.zeros((nlo, J), np.int64)
    pc_lo = np.zeros(nlo, np.int64)
    for x in range(1, nlo):
        b = _low_index(x)
        prev = x & (x - 1)
        pc_lo[x] = pc_lo[prev] + 1
        for j in range(J):
            pm_lo[x, j] = pm_lo[prev, j] | pairbits[b, j]
    pm_hi = np.zeros(J, np.int64)
    best = -1
    best_mask = -1
    n_best = 0
    n_good = 0
    for hi in range(1 << (m - L)):
        for j in range(J):
            acc = 0
            h = hi
            while h:
                b = _low_index(h)
                acc |= pairbits[L + b, j]
                h &= h - 1
            pm_hi[j] = acc
        pc_hi = _popcount(hi)
        for lo in range(nlo):
            bad = False
            for j in range(J):
                if tables[fam[j], pm_lo[lo, j] | pm_hi[j]]:
                    bad = True
                    break
            if bad:
                continue
            n_good += 1
            size = pc_hi + pc_lo[lo]
            if size > best:
                best = size
                best_mask = (np.int64(hi) << L) | lo
                n_best = 1
            elif size == best:
                n_best += 1
    return best, best_mask, n_best, n_good
