"""Exact finite-N laws of the RSK shape of a random word.

Covers the standard-tableau count, Schur functions (by tableau enumeration
and by the repeated-variable alternant), the push-forward measure on
partitions, the generalized Charlier ensemble and its Poisson mixture
representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .combinat import AlphabetDistribution, Partition, as_distribution
from .errors import DegenerateSeparation, InstanceTooLarge, ShapeTooLong, TailNotNegligible

SEPARATION_TOLERANCE = 1e-9
POISSON_TAIL_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Pmf:
    support: list
    mass: list
    meta: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return dict(zip(self.support, self.mass))

    def total(self):
        if self.mass and isinstance(self.mass[0], Fraction):
            return sum(self.mass, Fraction(0))
        return math.fsum(self.mass)

    def box_probability(self, thresholds: Sequence[int]):
        """P(lambda_i <= thresholds_i for every i)."""
        hits = [w for lam, w in zip(self.support, self.mass)
                if all(a <= b for a, b in zip(lam, thresholds))]
        if self.mass and isinstance(self.mass[0], Fraction):
            return sum(hits, Fraction(0))
        return math.fsum(hits)


@dataclass(frozen=True)
class SchurValue:
    value: object
    shape: Partition
    probs: tuple

    def __float__(self) -> float:
        return float(self.value)


def normalize_partition(shape: Sequence[int], m: int | None = None) -> Partition:
    parts = [int(x) for x in shape]
    if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{tuple(shape)} is not a partition")
    nonzero = [x for x in parts if x > 0]
    if m is None:
        return tuple(nonzero)
    if len(nonzero) > m:
        raise ShapeTooLong(f"{tuple(shape)} has more than {m} parts")
    return tuple(nonzero + [0] * (m - len(nonzero)))


def partitions(n: int, m: int) -> Iterator[Partition]:
    """Partitions of ``n`` into at most ``m`` parts, padded to length ``m``."""

    def rec(remaining, parts_left, cap):
        if parts_left == 0:
            if remaining == 0:
                yield ()
            return
        for first in range(min(remaining, cap), -1, -1):
            if first * parts_left < remaining:
                break
            for rest in rec(remaining - first, parts_left - 1, first):
                yield (first,) + rest

    yield from rec(n, m, n)


def syt_count(shape: Sequence[int], m: int | None = None, n: int | None = None) -> int:
    """Number of standard tableaux of the given shape (exact integer)."""
    lam = list(shape)
    m = m if m is not None else len(lam)
    lam = list(normalize_partition(lam, m))
    total = sum(lam)
    if n is not None and n != total:
        raise ValueError(f"shape has size {total}, not {n}")
    num = math.factorial(total)
    for i in range(m):
        for j in range(i + 1, m):
            num *= lam[i] - lam[j] + j - i
    den = math.prod(math.factorial(lam[j] + m - 1 - j) for j in range(m))
    count, rem = divmod(num, den)
    assert rem == 0
    return count


def standard_tableaux(shape: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Enumerate standard fillings by repeatedly placing the largest entry in a corner."""
    lam = normalize_partition(shape)
    size = sum(lam)

    def rec(rows: tuple[int, ...], value: int):
        if value == 0:
            yield tuple(() for _ in lam)
            return
        for r, length in enumerate(rows):
            below = rows[r + 1] if r + 1 < len(rows) else 0
            if length > below:
                smaller = rows[:r] + (length - 1,) + rows[r + 1:]
                for t in rec(smaller, value - 1):
                    yield t[:r] + (t[r] + (value,),) + t[r + 1:]

    yield from rec(lam, size)


def semistandard_tableaux(shape: Sequence[int], m: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Semi-standard fillings with entries in ``1..m``, built row by row."""
    lam = normalize_partition(shape)

    def rows_for(length, above):
        # weakly increasing row, strictly greater than the row above
        def rec(i, low):
            if i == length:
                yield ()
                return
            lo = max(low, above[i] + 1 if above else 1)
            for v in range(lo, m + 1):
                for rest in rec(i + 1, v):
                    yield (v,) + rest

        yield from rec(0, 1)

    def rec(r, above):
        if r == len(lam):
            yield ()
            return
        for row in rows_for(lam[r], above):
            for rest in rec(r + 1, row):
                yield (row,) + rest

    yield from rec(0, None)


def schur_ssyt(shape: Sequence[int], probs: Sequence) -> SchurValue:
    """Schur function as the sum over semi-standard tableaux of prod p_i^{#i}."""
    probs = tuple(probs)
    lam = normalize_partition(shape)
    m = len(probs)
    if sum(lam) > 12 or m > 4:
        raise InstanceTooLarge("tableau enumeration limited to |shape| <= 12, M <= 4")
    exact = all(isinstance(p, Fraction) for p in probs)
    zero = Fraction(0) if exact else 0.0
    total = zero
    terms = []
    for t in semistandard_tableaux(lam, m):
        term = math.prod((probs[v - 1] for row in t for v in row), start=Fraction(1) if exact else 1.0)
        terms.append(term)
    total = sum(terms, zero) if exact else math.fsum(terms)
    return SchurValue(total, lam, probs)


def _sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def _signed_permutations(m: int) -> tuple:
    return tuple((_sign(s), s) for s in permutations(range(m)))


def _superfactorial(d: int) -> int:
    return math.prod(math.factorial(j) for j in range(d))


def schur_repeated_det(shape: Sequence[int], dist, exact: bool | None = None) -> SchurValue:
    """Schur function at the tau-sorted probabilities, repeated values allowed.

    Alternating sum over permutations of
    ``prod_i p_i^(h_s(i) - r_i) * h_s(i)^r_i`` with ``h_j = lambda_j + M - j``
    and ``r_i = m_k + d_k - i`` inside block ``k``, divided by
    ``prod_k 0!1!...(d_k-1)!`` and ``prod_{k<l} (p^(k) - p^(l))^(d_k d_l)``.
    """
    dist = as_distribution(dist)
    m = dist.m
    if m > 8:
        raise InstanceTooLarge("permutation sum limited to M <= 8")
    if exact is None:
        exact = dist.exact
    lam = normalize_partition(shape)
    p = [Fraction(x) for x in dist.sorted_probs] if exact else [float(x) for x in dist.sorted_probs]
    distinct = [Fraction(x) for x in dist.distinct] if exact else [float(x) for x in dist.distinct]
    if len(lam) > m:
        return SchurValue(Fraction(0) if exact else 0.0, lam, tuple(p))
    lam = lam + (0,) * (m - len(lam))
    if not exact:
        for a, b in zip(distinct, distinct[1:]):
            if a - b <= SEPARATION_TOLERANCE:
                raise DegenerateSeparation(f"distinct probabilities {a} and {b} are too close")

    h = [lam[j] + m - 1 - j for j in range(m)]
    r = [off + d - 1 - i for off, d in zip(dist.offsets, dist.mults) for i in range(off, off + d)]
    # entry[i][j] = p_i^(h_j - r_i) h_j^r_i
    entry = [[p[i] ** (h[j] - r[i]) * h[j] ** r[i] for j in range(m)] for i in range(m)]
    terms = []
    for sign, s in _signed_permutations(m):
        term = entry[0][s[0]]
        for i in range(1, m):
            term = term * entry[i][s[i]]
        terms.append(term if sign > 0 else -term)
    num = sum(terms, Fraction(0)) if exact else math.fsum(terms)

    den = math.prod(_superfactorial(d) for d in dist.mults)
    den = Fraction(den) if exact else float(den)
    for k in range(dist.k):
        for l in range(k + 1, dist.k):
            den *= (distinct[k] - distinct[l]) ** (dist.mults[k] * dist.mults[l])
    return SchurValue(num / den, lam, tuple(p))


@lru_cache(maxsize=4096)
def _shape_pmf_cached(dist: AlphabetDistribution, n: int, exact: bool) -> Pmf:
    support, mass = [], []
    for lam in partitions(n, dist.m):
        s = schur_repeated_det(lam, dist, exact=exact).value
        f = syt_count(lam, dist.m, n)
        support.append(lam)
        mass.append(s * f if exact else float(s) * float(f))
    return Pmf(support, mass, {"M": dist.m, "N": n, "probs": dist.probs})


def shape_pmf(dist, n: int, exact: bool | None = None) -> Pmf:
    """Law of the RSK shape of an iid word of length ``n``: s_lambda(p) f^lambda."""
    dist = as_distribution(dist)
    if n > 40 or dist.m > 6:
        raise InstanceTooLarge("shape_pmf limited to n <= 40, M <= 6")
    if exact is None:
        exact = dist.exact
    return _shape_pmf_cached(dist, n, bool(exact))


def _log_poisson(n: int, alpha: float) -> float:
    return -alpha + n * math.log(alpha) - math.lgamma(n + 1)


def charlier_pmf(shape: Sequence[int], alpha: float, dist) -> float:
    """Generalized Charlier weight of a partition with at most M parts."""
    dist = as_distribution(dist)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    m = dist.m
    try:
        lam = normalize_partition(shape, m)
    except ShapeTooLong:
        return 0.0
    log_w = -alpha + sum(lam) * math.log(alpha)
    for i in range(m):
        for j in range(i + 1, m):
            log_w += math.log(lam[i] - lam[j] + j - i)
    log_w -= sum(math.lgamma(lam[j] + m - j) for j in range(m))
    return float(schur_repeated_det(lam, dist, exact=False).value) * math.exp(log_w)


def default_truncation(alpha: float) -> int:
    return math.ceil(alpha + 12 * math.sqrt(alpha) + 20)


def poisson_tail_bound(alpha: float, n_max: int) -> float:
    """Chernoff bound on P(Poisson(alpha) > n_max)."""
    x = n_max + 1
    if x <= alpha:
        return 1.0
    return math.exp(-alpha + x - x * math.log(x / alpha))


def poissonize_pmf(dist, alpha: float, n_max: int | None = None) -> Pmf:
    """Poisson(alpha) mixture of the fixed-length shape laws, truncated at ``n_max``."""
    dist = as_distribution(dist)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if n_max is None:
        n_max = default_truncation(alpha)
    tail = poisson_tail_bound(alpha, n_max)
    if tail > POISSON_TAIL_TOLERANCE:
        raise TailNotNegligible(f"Poisson({alpha}) tail beyond {n_max} is up to {tail:.3g}")
    support, mass = [], []
    for n in range(n_max + 1):
        weight = math.exp(_log_poisson(n, alpha))
        pmf = _shape_pmf_unchecked(dist, n)
        support.extend(pmf.support)
        mass.extend(weight * w for w in pmf.mass)
    return Pmf(support, mass, {"M": dist.m, "alpha": alpha, "probs": dist.probs,
                               "n_max": n_max, "tail_bound": tail})


def _shape_pmf_unchecked(dist: AlphabetDistribution, n: int) -> Pmf:
    # the Poisson mixture legitimately needs word lengths beyond shape_pmf's guard
    return _shape_pmf_cached(dist, n, False)


@dataclass
class DepoissonReport:
    monotone: bool
    violations: list
    table: dict
    c_fit: float | None
    n_range: tuple

    def __bool__(self) -> bool:
        return self.monotone


def _poissonized_box(dist: AlphabetDistribution, alpha: float, thresholds) -> float:
    # boxes only contain partitions of size <= sum(thresholds)
    cap = sum(thresholds)
    terms = [math.exp(_log_poisson(n, alpha)) * float(_shape_pmf_unchecked(dist, n).box_probability(thresholds))
             for n in range(cap + 1)]
    return math.fsum(terms)


def depoisson_monotonicity_check(dist, n_range: Sequence[int], thresholds=None,
                                 max_threshold: int = 4, exact: bool | None = None) -> DepoissonReport:
    """Check that box probabilities P_{M,N}(lambda <= n) do not increase with N.

    ``thresholds`` is one vector or a list of vectors; by default every
    vector with entries in ``0..max_threshold`` is checked.  The constant of
    the Poisson sandwich is fitted and reported, never asserted.
    """
    dist = as_distribution(dist)
    if exact is None:
        exact = dist.exact
    if thresholds is None:
        vectors = list(product(range(max_threshold + 1), repeat=dist.m))
    elif thresholds and isinstance(thresholds[0], (int,)):
        vectors = [tuple(thresholds)]
    else:
        vectors = [tuple(v) for v in thresholds]
    n_range = tuple(n_range)
    table = {}
    violations = []
    for v in vectors:
        row = [shape_pmf(dist, n, exact=exact).box_probability(v) for n in n_range]
        table[v] = row
        for (n0, a), (n1, b) in zip(zip(n_range, row), zip(n_range[1:], row[1:])):
            if (b > a) if exact else (b > a + 1e-12):
                violations.append((v, n0, n1, a, b))

    c_fit = None
    for n in n_range:
        if n < 2:
            continue
        spread = 3 * math.sqrt(n * math.log(n))
        for v in vectors:
            p_n = float(table[v][n_range.index(n)])
            gaps = [_poissonized_box(dist, n + spread, v) - p_n]
            if n - spread > 0:
                gaps.append(p_n - _poissonized_box(dist, n - spread, v))
            c = n * n * max(max(gaps), 0.0)
            c_fit = c if c_fit is None else max(c_fit, c)
    return DepoissonReport(not violations, violations, table, c_fit, n_range)
