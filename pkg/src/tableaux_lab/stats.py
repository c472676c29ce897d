"""Sample statistics shared by the random-matrix and experiment code."""

from __future__ import annotations

import numpy as np
from scipy import stats as _st

from .errors import EmptySample


def _clean(x, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=float).ravel()
    if a.size < 2:
        raise EmptySample(f"{name} needs at least 2 samples, got {a.size}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite values")
    return a


def ks_statistic(a, b) -> float:
    """Kolmogorov-Smirnov sup-distance.

    ``b`` is either a second sample (two-sample statistic) or a CDF callable
    (one-sample statistic against that law).
    """
    a = _clean(a, "a")
    if callable(b):
        return float(_st.kstest(a, b, method="asymp").statistic)
    b = _clean(b, "b")
    return float(_st.ks_2samp(a, b, method="asymp").statistic)


def semicircle_cdf(x) -> np.ndarray:
    """CDF of the density sqrt(4 - t^2) / (2 pi) on [-2, 2]."""
    t = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    return 0.5 + t * np.sqrt(4.0 - t * t) / (4.0 * np.pi) + np.arcsin(t / 2.0) / np.pi


def moments(x) -> dict[str, float]:
    """Mean, variance, skewness and excess kurtosis."""
    a = _clean(x, "x")
    return {
        "mean": float(np.mean(a)),
        "var": float(np.var(a, ddof=1)),
        "skew": float(_st.skew(a)),
        "kurt": float(_st.kurtosis(a)),
    }


def ks_critical(n: int, m: int | None = None, level: float = 0.01) -> float:
    """Asymptotic KS critical value at the given level."""
    c = np.sqrt(-0.5 * np.log(level / 2.0))
    eff = n if m is None else n * m / (n + m)
    return float(c / np.sqrt(eff))

