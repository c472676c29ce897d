"""Compiled inner loops for batch word statistics."""

import numpy as np
from numba import njit


@njit(cache=True)
def _shape_counts(letters, m, counts):
    # counts[r, a] = number of letters a (0-based) in row r of the P tableau
    counts[:, :] = 0
    for t in range(letters.shape[0]):
        x = letters[t] - 1
        for r in range(m):
            y = -1
            for b in range(x + 1, m):
                if counts[r, b] > 0:
                    y = b
                    break
            counts[r, x] += 1
            if y < 0:
                break
            counts[r, y] -= 1
            x = y


@njit(cache=True)
def rsk_shapes(words, m):
    """RSK shapes of a batch of words, rows of ``words`` holding letters 1..m."""
    s = words.shape[0]
    out = np.zeros((s, m), dtype=np.int64)
    counts = np.zeros((m, m), dtype=np.int64)
    for i in range(s):
        _shape_counts(words[i], m, counts)
        for r in range(m):
            tot = 0
            for a in range(m):
                tot += counts[r, a]
            out[i, r] = tot
    return out


@njit(cache=True)
def longest_weakly_increasing_batch(words):
    s, n = words.shape
    out = np.zeros(s, dtype=np.int64)
    tails = np.empty(n + 1, dtype=np.int64)
    for i in range(s):
        size = 0
        for t in range(n):
            x = words[i, t]
            lo, hi = 0, size
            while lo < hi:
                mid = (lo + hi) // 2
                if tails[mid] <= x:
                    lo = mid + 1
                else:
                    hi = mid
            tails[lo] = x
            if lo == size:
                size += 1
        out[i] = size
    return out


@njit(cache=True)
def rsk_shapes_ragged(words, lengths, m):
    """Like :func:`rsk_shapes` but row ``i`` only uses its first ``lengths[i]`` letters."""
    s = words.shape[0]
    out = np.zeros((s, m), dtype=np.int64)
    counts = np.zeros((m, m), dtype=np.int64)
    for i in range(s):
        _shape_counts(words[i, :lengths[i]], m, counts)
        for r in range(m):
            tot = 0
            for a in range(m):
                tot += counts[r, a]
            out[i, r] = tot
    return out
