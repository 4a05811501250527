"""Vectorized numpy counterparts of the numba kernels (no JIT needed)."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

_RANGE_CHUNK = 1 << 20
_SET_CHUNK = 4096


def _masks_of_size(n: int, k: int):
    """Yield ascending int64 arrays covering every n-bit mask of popcount k."""
    if n <= 26:
        for start in range(0, 1 << n, _RANGE_CHUNK):
            block = np.arange(start, min(start + _RANGE_CHUNK, 1 << n), dtype=np.int64)
            sel = block[np.bitwise_count(block) == k]
            if sel.size:
                yield sel
        return
    # wide universes: enumerate combinations and sort per chunk; callers take the minimum
    it = itertools.combinations(range(n), k)
    while True:
        chunk = list(itertools.islice(it, _RANGE_CHUNK))
        if not chunk:
            return
        arr = np.array([sum(1 << v for v in c) for c in chunk], dtype=np.int64)
        arr.sort()
        yield arr


def first_dominated_subset(edges: np.ndarray, n: int, k: int) -> int:
    if k == 0:
        return 0
    if k > n:
        return -1
    best = -1
    for S in _masks_of_size(n, k):
        wit = np.zeros_like(S)
        for e in edges:
            inter = S & e
            single = (inter != 0) & ((inter & (inter - 1)) == 0)
            wit |= np.where(single, inter, 0)
        hits = S[wit == S]
        if hits.size:
            cand = int(hits.min())
            if n <= 26:
                return cand
            best = cand if best < 0 else min(best, cand)
    return best


@lru_cache(maxsize=None)
def _pm_patterns(size: int) -> tuple[np.ndarray, np.ndarray]:
    """Local pair table and all perfect matchings of ``range(size)`` as pair indices."""
    pairs = list(itertools.combinations(range(size), 2))
    index = {p: i for i, p in enumerate(pairs)}

    def rec(rest: tuple[int, ...]):
        if not rest:
            yield ()
            return
        a = rest[0]
        for j in range(1, len(rest)):
            b = rest[j]
            remaining = rest[1:j] + rest[j + 1:]
            for tail in rec(remaining):
                yield (index[(a, b)],) + tail

    pats = np.array(list(rec(tuple(range(size)))), dtype=np.int64).reshape(-1, size // 2)
    return np.array(pairs, dtype=np.int64).reshape(-1, 2), pats


def first_matching_trace_set(edges: np.ndarray, n: int, k: int) -> int:
    size = 2 * k
    if size > n:
        return -1
    pairs, pats = _pm_patterns(size)
    best = -1
    for block in _masks_of_size(n, size):
        for start in range(0, block.size, _SET_CHUNK):
            S = block[start:start + _SET_CHUNK]
            low = np.empty((S.size, size), dtype=np.int64)
            rem = S.copy()
            for p in range(size):
                lb = rem & -rem
                low[:, p] = lb
                rem ^= lb
            inter = S[:, None] & edges[None, :]
            present = np.empty((S.size, len(pairs)), dtype=bool)
            for idx, (a, b) in enumerate(pairs):
                pm = (low[:, a] | low[:, b])[:, None]
                present[:, idx] = (inter == pm).any(axis=1)
            ok = present[:, pats].all(axis=2).any(axis=1)
            hits = S[ok]
            if hits.size:
                cand = int(hits.min())
                if n <= 26:
                    return cand
                best = cand if best < 0 else min(best, cand)
    return best


def labeled_scan(pairbits: np.ndarray, fam: np.ndarray, tables: np.ndarray, lo_bits: int):
    m, J = pairbits.shape
    L = min(m, lo_bits)
    pm_lo = np.zeros((1, J), dtype=np.int64)
    for b in range(L):
        pm_lo = np.concatenate([pm_lo, pm_lo | pairbits[b]])
    pc_lo = np.bitwise_count(np.arange(1 << L, dtype=np.int64)).astype(np.int64)
    best, best_mask, n_best, n_good = -1, -1, 0, 0
    for hi in range(1 << (m - L)):
        pm_hi = np.zeros(J, dtype=np.int64)
        for b in range(m - L):
            if hi >> b & 1:
                pm_hi |= pairbits[L + b]
        pm = pm_lo | pm_hi
        bad = np.zeros(1 << L, dtype=bool)
        for j in range(J):
            bad |= tables[fam[j]][pm[:, j]]
        good = ~bad
        count = int(good.sum())
        if not count:
            continue
        n_good += count
        sizes = np.where(good, pc_lo + bin(hi).count("1"), -1)
        top = int(sizes.max())
        if top > best:
            best = top
            best_mask = (hi << L) | int(np.flatnonzero(sizes == top)[0])
            n_best = int((sizes == top).sum())
        elif top == best:
            n_best += int((sizes == top).sum())
    return best, best_mask, n_best, n_good
