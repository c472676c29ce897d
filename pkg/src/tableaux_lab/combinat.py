"""Inhomogeneous random words, RSK row insertion and Greene's path sums.

Letters are the integers ``1..M`` with their natural order.  Partitions are
plain tuples of length ``M`` padded with zeros, so they can be used directly
as dictionary keys and compared across code paths.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import InstanceTooLarge, NonPositiveProbability, SumNotOne

Partition = tuple[int, ...]

SUM_TOLERANCE = 1e-12


@dataclass(frozen=True)
class AlphabetDistribution:
    """Letter probabilities together with their block structure.

    ``tau`` lists the (1-based) letters in non-increasing order of
    probability; ``distinct``, ``mults`` and ``offsets`` describe the runs of
    equal probabilities in that order.
    """

    probs: tuple
    tau: tuple[int, ...]
    distinct: tuple
    mults: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.probs)

    @property
    def k(self) -> int:
        return len(self.distinct)

    @property
    def exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs)

    @property
    def sorted_probs(self) -> tuple:
        """Probabilities in tau-order, ``p_tau(1) >= ... >= p_tau(M)``."""
        return tuple(self.probs[j - 1] for j in self.tau)

    @property
    def p_max(self):
        return self.distinct[0]

    def sorted_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.sorted_probs])

    def block_of(self, position: int) -> int:
        """0-based block index of the 1-based tau-position ``position``."""
        if not 1 <= position <= self.m:
            raise ValueError(f"position {position} outside 1..{self.m}")
        for k in range(self.k - 1, -1, -1):
            if position > self.offsets[k]:
                return k
        raise AssertionError("unreachable")

    def block_slices(self) -> list[slice]:
        return [slice(o, o + d) for o, d in zip(self.offsets, self.mults)]

    @classmethod
    def uniform(cls, m: int, exact: bool = False) -> "AlphabetDistribution":
        p = Fraction(1, m) if exact else 1.0 / m
        return build_block_structure([p] * m)


def build_block_structure(probs: Sequence) -> AlphabetDistribution:
    """Validate letter probabilities and derive the ordering and blocks.

    Rational inputs (``Fraction`` or ``int``) stay exact; anything else is
    converted to float.  Rational sums must equal one exactly; a float sum
    within ``1e-12`` of one is renormalized.
    """
    probs = list(probs)
    if not probs:
        raise ValueError("an alphabet needs at least one letter")
    exact = all(isinstance(p, Rational) for p in probs)
    probs = [Fraction(p) if exact else float(p) for p in probs]
    for j, p in enumerate(probs, start=1):
        if not p > 0:
            raise NonPositiveProbability(f"p_{j} = {p} is not positive")
    total = sum(probs) if exact else math.fsum(probs)
    if (total != 1) if exact else abs(total - 1.0) > SUM_TOLERANCE:
        raise SumNotOne(f"probabilities sum to {float(total)!r}")
    if total != 1:
        probs = [p / total for p in probs]

    # sorted() is stable, so ties keep the original letter order
    tau = tuple(sorted(range(1, len(probs) + 1), key=lambda j: -probs[j - 1]))
    distinct, mults, offsets = [], [], []
    for pos, j in enumerate(tau):
        p = probs[j - 1]
        if distinct and p == distinct[-1]:
            mults[-1] += 1
        else:
            distinct.append(p)
            mults.append(1)
            offsets.append(pos)
    return AlphabetDistribution(
        probs=tuple(probs),
        tau=tau,
        distinct=tuple(distinct),
        mults=tuple(mults),
        offsets=tuple(offsets),
    )


def as_distribution(dist) -> AlphabetDistribution:
    if isinstance(dist, AlphabetDistribution):
        return dist
    return build_block_structure(dist)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("alphabet size must be positive")
        bad = [a for a in self.letters if not 1 <= a <= self.m]
        if bad:
            raise ValueError(f"letters {bad[:5]} outside 1..{self.m}")

    def __len__(self) -> int:
        return len(self.letters)

    def to_csv(self) -> str:
        return ",".join(map(str, self.letters))

    @classmethod
    def from_csv(cls, text: str, m: int) -> "Word":
        text = text.strip()
        letters = tuple(int(t) for t in text.split(",")) if text else ()
        return cls(letters, m)

    def indicator_matrix(self) -> np.ndarray:
        """The ``M x N`` 0/1 matrix with a one at (letter, position)."""
        x = np.zeros((self.m, len(self.letters)), dtype=np.int64)
        if self.letters:
            x[np.array(self.letters) - 1, np.arange(len(self.letters))] = 1
        return x


def _cumulative(dist: AlphabetDistribution) -> np.ndarray:
    cdf = np.cumsum([float(p) for p in dist.probs])
    cdf[-1] = 1.0
    return cdf


def sample_words(dist, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` iid words of length ``n`` as an int8/int16 array of letters 1..M."""
    dist = as_distribution(dist)
    if n < 0 or count < 0:
        raise ValueError("n and count must be nonnegative")
    dtype = np.int8 if dist.m < 127 else np.int16
    if dist.m == 1:
        return np.ones((count, n), dtype=dtype)
    if dist.k == 1:
        return rng.integers(1, dist.m + 1, size=(count, n), dtype=dtype)
    u = rng.random((count, n))
    return (np.searchsorted(_cumulative(dist), u, side="right") + 1).astype(dtype)


def sample_word(dist, n: int, rng: np.random.Generator) -> Word:
    dist = as_distribution(dist)
    letters = sample_words(dist, n, 1, rng)[0]
    return Word(tuple(int(a) for a in letters), dist.m)


@dataclass(frozen=True)
class TableauPair:
    p_tableau: tuple[tuple[int, ...], ...]
    q_tableau: tuple[tuple[int, ...], ...]
    shape: Partition


def _letters(word) -> tuple[Sequence[int], int]:
    if isinstance(word, Word):
        return word.letters, word.m
    letters = [int(a) for a in word]
    return letters, max(letters, default=1)


def _pad(shape: Iterable[int], m: int) -> Partition:
    shape = list(shape)
    return tuple(shape + [0] * (m - len(shape)))


def rsk(word) -> TableauPair:
    """Row-insertion RSK of a word; Q records the insertion positions."""
    letters, m = _letters(word)
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for pos, x in enumerate(letters, start=1):
        r = 0
        while True:
            if r == len(p_rows):
                p_rows.append([x])
                q_rows.append([pos])
                break
            row = p_rows[r]
            i = bisect_right(row, x)
            if i == len(row):
                row.append(x)
                q_rows[r].append(pos)
                break
            row[i], x = x, row[i]
            r += 1
    shape = _pad((len(row) for row in p_rows), max(m, len(p_rows)))
    return TableauPair(
        p_tableau=tuple(map(tuple, p_rows)),
        q_tableau=tuple(map(tuple, q_rows)),
        shape=shape,
    )


def rsk_shape(word, m: int | None = None) -> Partition:
    """Shape of the RSK tableaux only (no recording tableau)."""
    letters, wm = _letters(word)
    rows: list[list[int]] = []
    for x in letters:
        for row in rows:
            i = bisect_right(row, x)
            if i == len(row):
                row.append(x)
                break
            row[i], x = x, row[i]
        else:
            rows.append([x])
    return _pad((len(r) for r in rows), m or wm)


def longest_weakly_increasing(word) -> int:
    """Patience sorting for weakly increasing subsequences."""
    tails: list[int] = []
    for x in _letters(word)[0]:
        i = bisect_right(tails, x)
        if i == len(tails):
            tails.append(x)
        else:
            tails[i] = x
    return len(tails)


def greene_sums(word, l: int, m: int | None = None) -> int:
    """Maximal number of word entries covered by ``l`` disjoint up/right paths.

    Dynamic programming over path fronts: the state is the sorted vector of
    the rows (letters) the ``l`` paths currently sit on, 0 meaning the path
    has not entered the grid yet.  Reading column ``j`` a path on row
    ``r <= W(j)`` may climb to ``W(j)`` and collect the entry.
    """
    letters, wm = _letters(word)
    m = m or wm
    if not 1 <= l <= m:
        raise ValueError(f"l={l} outside 1..{m}")
    if m > 6 or len(letters) > 200:
        raise InstanceTooLarge(f"front DP limited to M <= 6, N <= 200 (got M={m}, N={len(letters)})")
    best: dict[tuple[int, ...], int] = {(0,) * l: 0}
    for x in letters:
        nxt = dict(best)
        for front, value in best.items():
            seen = set()
            for i, r in enumerate(front):
                if r > x or r in seen:
                    continue
                seen.add(r)
                moved = tuple(sorted(front[:i] + (x,) + front[i + 1:]))
                if nxt.get(moved, -1) < value + 1:
                    nxt[moved] = value + 1
        best = nxt
    return max(best.values())


def _grid_paths(letters: Sequence[int], m: int) -> list[tuple[int, int]]:
    """All up/right lattice paths that start and end on a one-entry.

    Returned as ``(cell bitmask, number of one-entries covered)``.  Cells are
    numbered ``(col - 1) * m + (row - 1)``.
    """
    n = len(letters)
    ones = {(j, letters[j - 1]) for j in range(1, n + 1)}
    paths = []

    def extend(col, row, mask, gain, end):
        ec, er = end
        if (col, row) == end:
            paths.append((mask, gain))
            return
        if col < ec:
            cell = (col + 1, row)
            extend(col + 1, row, mask | 1 << ((col) * m + row - 1), gain + (cell in ones), end)
        if row < er:
            cell = (col, row + 1)
            extend(col, row + 1, mask | 1 << ((col - 1) * m + row), gain + (cell in ones), end)

    starts = sorted(ones)
    for a in starts:
        for b in starts:
            if b[0] >= a[0] and b[1] >= a[1]:
                extend(a[0], a[1], 1 << ((a[0] - 1) * m + a[1] - 1), 1, b)
    return paths


def greene_sums_bruteforce(word, l: int, m: int | None = None, max_paths: int = 20000) -> int:
    """Exhaustive search over families of ``l`` cell-disjoint lattice paths.

    Only for tiny grids (``M * N <= 64``); exists as an independent check of
    :func:`greene_sums` and of the RSK shape.
    """
    letters, wm = _letters(word)
    m = m or wm
    if not 1 <= l <= m:
        raise ValueError(f"l={l} outside 1..{m}")
    if m * len(letters) > 64:
        raise InstanceTooLarge(f"M*N = {m * len(letters)} exceeds 64")
    if not letters:
        return 0
    paths = _grid_paths(letters, m)
    if len(paths) > max_paths:
        raise InstanceTooLarge(f"{len(paths)} candidate paths exceed {max_paths}")
    paths.sort(key=lambda p: -p[1])
    n = len(letters)
    best = 0

    def search(start, used, count, total):
        nonlocal best
        best = max(best, total)
        if count == l or best == n:
            return
        for idx in range(start, len(paths)):
            mask, gain = paths[idx]
            # paths are sorted by gain, so nothing later can beat the bound
            if total + gain * (l - count) <= best:
                return
            if mask & used == 0:
                search(idx + 1, used | mask, count + 1, total + gain)

    search(0, 0, 0, 0)
    return best


class _Kahan:
    __slots__ = ("total", "comp")

    def __init__(self):
        self.total = 0.0
        self.comp = 0.0

    def add(self, x: float) -> None:
        y = x - self.comp
        t = self.total + y
        self.comp = (t - self.total) - y
        self.total = t


def exhaustive_shape_pmf(dist, n: int, exact: bool | None = None) -> dict[Partition, float]:
    """Law of the RSK shape by enumerating all ``M**n`` words.

    Float mode uses compensated summation; exact mode (rational
    probabilities, ``M**n <= 1e5``) returns ``Fraction`` masses.
    """
    dist = as_distribution(dist)
    m = dist.m
    if exact is None:
        exact = dist.exact
    if m**n > 10**7 or (exact and m**n > 10**5):
        raise InstanceTooLarge(f"{m}^{n} words is too many to enumerate")
    probs = [Fraction(p) for p in dist.probs] if exact else [float(p) for p in dist.probs]
    acc: dict[Partition, object] = {}
    for letters in product(range(1, m + 1), repeat=n):
        weight = math.prod((probs[a - 1] for a in letters), start=Fraction(1) if exact else 1.0)
        shape = rsk_shape(letters, m)
        if exact:
            acc[shape] = acc.get(shape, Fraction(0)) + weight
        else:
            acc.setdefault(shape, _Kahan()).add(weight)
    if exact:
        return acc
    return {shape: k.total for shape, k in acc.items()}
