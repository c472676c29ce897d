"""Independent reference computations used only by the tests."""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import combinations

import mpmath
import numpy as np


def charpoly_roots(a, dps: int = 50) -> np.ndarray:
    """Eigenvalues via the characteristic polynomial, in extended precision.

    Coefficients come from the Faddeev-LeVerrier recursion and the roots
    from mpmath's polynomial solver.
    """
    n = len(a)
    with mpmath.workdps(dps):
        A = mpmath.matrix([[mpmath.mpc(complex(a[i][j])) for j in range(n)] for i in range(n)])
        coeffs = [mpmath.mpf(1)]
        M = mpmath.zeros(n)
        I = mpmath.eye(n)
        for k in range(1, n + 1):
            M = A * M + coeffs[-1] * I
            AM = A * M
            c = -sum(AM[i, i] for i in range(n)) / k
            coeffs.append(c)
        if n == 1:
            roots = [-coeffs[1]]
        else:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return np.sort(np.array([float(mpmath.re(r)) for r in roots]))


def hermitian_cubic_roots(a) -> np.ndarray:
    """Closed-form (trigonometric) eigenvalues of a 3x3 Hermitian matrix."""
    a = np.asarray(a, dtype=complex)
    tr = a.trace().real
    c1 = (a[0, 0] * a[1, 1] + a[0, 0] * a[2, 2] + a[1, 1] * a[2, 2]
          - abs(a[0, 1]) ** 2 - abs(a[0, 2]) ** 2 - abs(a[1, 2]) ** 2).real
    det = np.linalg.det(a).real
    # lambda^3 - tr lambda^2 + c1 lambda - det, shifted by tr/3
    shift = tr / 3
    p = c1 - tr * tr / 3
    q = -2 * tr ** 3 / 27 + tr * c1 / 3 - det
    if abs(p) < 1e-300:
        return np.full(3, shift)
    r = math.sqrt(-p / 3)
    arg = max(-1.0, min(1.0, -q / (2 * r ** 3)))
    phi = math.acos(arg) / 3
    roots = [shift + 2 * r * math.cos(phi - 2 * math.pi * k / 3) for k in range(3)]
    return np.sort(roots)


@lru_cache(maxsize=None)
def count_standard_fillings(shape: tuple[int, ...]) -> int:
    """Number of standard fillings by removing the largest entry from each corner."""
    shape = tuple(x for x in shape if x)
    if sum(shape) <= 1:
        return 1
    total = 0
    for i, row in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if row > below:
            total += count_standard_fillings(shape[:i] + (row - 1,) + shape[i + 1:])
    return total


def lis_bruteforce(word) -> int:
    n = len(word)
    for k in range(n, 0, -1):
        for idx in combinations(range(n), k):
            if all(word[a] <= word[b] for a, b in zip(idx, idx[1:])):
                return k
    return 0


def ssyt_bruteforce_schur(shape, probs) -> float:
    """Schur polynomial by filling every cell independently and filtering."""
    from itertools import product
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    m = len(probs)
    total = 0.0
    for fill in product(range(m), repeat=len(cells)):
        t = dict(zip(cells, fill))
        ok = all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t) and \
            all(t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t)
        if ok:
            total += math.prod(probs[v] for v in fill)
    return total


