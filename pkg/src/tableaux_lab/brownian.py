"""Discretized Brownian motion with the word covariance and its last-passage functionals.

A grid has one row per letter (tau-order) and ``n`` columns of increments.
A path through a block of ``d`` rows occupies row ``j`` over the columns
``(t_j, t_{j+1}]``, so every column is credited to exactly one row.  The
functional for ``l`` is the sum of all full rows above the block holding
position ``l`` plus the best total of ``l - m_k`` non-crossing paths inside
that block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .combinat import AlphabetDistribution, as_distribution
from .errors import BruteForceTooLarge

BRUTE_FORCE_LIMIT = 10**6


@dataclass(frozen=True)
class IncrementGrid:
    dist: AlphabetDistribution
    increments: np.ndarray

    @property
    def m(self) -> int:
        return self.increments.shape[0]

    @property
    def n(self) -> int:
        return self.increments.shape[1]


def increment_stack(dist, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``(count, M, n)`` increments, each column with covariance ``Sigma / n``.

    Column ``g`` of iid normals maps to ``(sqrt(p) * g - p * <sqrt(p), g>) / sqrt(n)``.
    """
    if n < 1:
        raise ValueError("grid resolution must be positive")
    dist = as_distribution(dist)
    p = dist.sorted_array()
    w = np.sqrt(p)
    g = rng.standard_normal((count, dist.m, n))
    proj = np.einsum("i,sin->sn", w, g)
    return (w[None, :, None] * g - p[None, :, None] * proj[:, None, :]) / np.sqrt(n)


def sample_increment_grid(dist, n: int, rng: np.random.Generator) -> IncrementGrid:
    dist = as_distribution(dist)
    return IncrementGrid(dist, increment_stack(dist, n, 1, rng)[0])


def _cumulative(rows: np.ndarray) -> np.ndarray:
    """Cumulative sums along time with a leading zero column."""
    pad = np.zeros(rows.shape[:-1] + (1,))
    return np.concatenate([pad, np.cumsum(rows, axis=-1)], axis=-1)


def _single_path(block: np.ndarray) -> np.ndarray:
    """Best single path through ``(count, d, n)`` rows, top row first."""
    s = _cumulative(block[:, 0, :])
    best = s
    for j in range(1, block.shape[1]):
        s = _cumulative(block[:, j, :])
        best = s + np.maximum.accumulate(best - s, axis=-1)
    return best[:, -1]


def _state_grid(levels: int, r: int):
    """Cube of level vectors; valid cells are non-decreasing."""
    shape = (levels,) * r
    idx = np.indices(shape).reshape(r, -1)
    valid = np.all(np.diff(idx, axis=0) >= 0, axis=0).reshape(shape)
    rows = idx + np.arange(r)[:, None]
    return shape, valid, rows


def _jump_closure(v: np.ndarray, r: int) -> np.ndarray:
    for ax in range(r, 0, -1):
        v = np.maximum.accumulate(v, axis=ax)
    return v


def _multi_path(block: np.ndarray, r: int) -> np.ndarray:
    """Best total of ``r`` non-crossing paths; path ``i`` runs from row ``i`` to row ``i + d - r``."""
    count, d, n = block.shape
    levels = d - r + 1
    shape, valid, rows = _state_grid(levels, r)
    v = np.full((count,) + shape, -np.inf)
    v[(slice(None),) + (0,) * r] = 0.0
    dead = ~valid
    for t in range(n):
        v = _jump_closure(v, r)
        v[:, dead] = -np.inf
        gain = block[:, rows, t].sum(axis=1).reshape((count,) + shape)
        v = v + gain
    v = _jump_closure(v, r)
    return v[(slice(None),) + (levels - 1,) * r]


def _block_sup(block: np.ndarray, r: int) -> np.ndarray:
    d = block.shape[1]
    if r == d:
        return block.sum(axis=(1, 2))
    if r == 1:
        return _single_path(block)
    return _multi_path(block, r)


def _locate(dist: AlphabetDistribution, l: int) -> tuple[int, int]:
    if not 1 <= l <= dist.m:
        raise ValueError(f"l must lie in 1..{dist.m}, got {l}")
    k = dist.block_of(l)
    return k, l - dist.offsets[k]


def lhat_batch(increments: np.ndarray, dist, l: int) -> np.ndarray:
    """Functional ``l`` for every grid in a ``(count, M, n)`` stack."""
    dist = as_distribution(dist)
    k, r = _locate(dist, l)
    off, d = dist.offsets[k], dist.mults[k]
    full = increments[:, :off, :].sum(axis=(1, 2))
    return full + _block_sup(increments[:, off:off + d, :], r)


def lhat(grid: IncrementGrid, l: int) -> float:
    return float(lhat_batch(grid.increments[None], grid.dist, l)[0])


def lhat_all(increments: np.ndarray, dist) -> np.ndarray:
    """``(count, M)`` array of the functionals for ``l = 1..M``."""
    dist = as_distribution(dist)
    return np.column_stack([lhat_batch(increments, dist, l) for l in range(1, dist.m + 1)])


def lhat_shape_batch(increments: np.ndarray, dist) -> np.ndarray:
    vals = lhat_all(increments, dist)
    return np.diff(vals, axis=1, prepend=0.0)


def lhat_shape_sample(dist, n: int, rng: np.random.Generator) -> np.ndarray:
    """Consecutive differences of the functionals on one shared grid."""
    dist = as_distribution(dist)
    return lhat_shape_batch(increment_stack(dist, n, 1, rng), dist)[0]


def count_subdivisions(n: int, d: int, r: int) -> int:
    """Number of admissible jump-time families for ``r`` paths in ``d`` rows."""
    if r == d:
        return 1
    shape, valid, _ = _state_grid(d - r + 1, r)
    c = valid.astype(object)
    for _ in range(n):
        for ax in range(r):
            c = np.cumsum(c, axis=ax)
        c = np.where(valid, c, 0)
    return int(c[(d - r,) * r])


def _path_families(n: int, d: int, r: int):
    jumps = d - r
    single = list(itertools.combinations_with_replacement(range(n + 1), jumps))

    def rec(i, bound):
        if i == r:
            yield ()
            return
        for times in single:
            if bound is None or all(a <= b for a, b in zip(times, bound)):
                for rest in rec(i + 1, times):
                    yield (times,) + rest

    return rec(0, None)


def lhat_bruteforce(grid: IncrementGrid, l: int, limit: int = BRUTE_FORCE_LIMIT) -> float:
    """Maximum over every admissible subdivision, by enumeration."""
    dist = grid.dist
    k, r = _locate(dist, l)
    off, d = dist.offsets[k], dist.mults[k]
    n = grid.n
    if count_subdivisions(n, d, r) > limit:
        raise BruteForceTooLarge(f"more than {limit} subdivisions for n={n}, d={d}, r={r}")
    full = float(grid.increments[:off].sum())
    cum = _cumulative(grid.increments[off:off + d])
    best = -np.inf
    for family in _path_families(n, d, r):
        total = 0.0
        for i, times in enumerate(family):
            edges = (0,) + times + (n,)
            for m, (a, b) in enumerate(zip(edges, edges[1:])):
                total += cum[i + m, b] - cum[i + m, a]
        best = max(best, total)
    return full + best
