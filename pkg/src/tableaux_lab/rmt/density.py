"""Joint eigenvalue density of the weighted traceless ensemble and scaling statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..combinat import as_distribution
from ..stats import ks_statistic, semicircle_cdf
from .eigen import tridiagonal_eigvals_many
from .ensembles import sample_chi, tridiagonal_gue_arrays

HYPERPLANE_TOLERANCE = 1e-9


def density_constant(dist) -> float:
    dist = as_distribution(dist)
    log_c = -0.5 * (dist.m - 1) * math.log(2 * math.pi)
    for d in dist.mults:
        log_c -= sum(math.lgamma(j + 1) for j in range(d))
    return math.exp(log_c)


def eigen_shape_density(x, dist) -> float:
    """Density of the ordered traceless spectrum at ``x`` (zero off the region).

    ``x`` lives on the hyperplane ``sum sqrt(p_j) x_j = 0`` (tau-order) and must
    be non-increasing inside each block; the density is with respect to
    surface measure on that hyperplane.
    """
    dist = as_distribution(dist)
    x = np.asarray(x, dtype=float)
    if x.shape != (dist.m,):
        raise ValueError(f"expected {dist.m} coordinates")
    w = np.sqrt(dist.sorted_array())
    if abs(float(np.dot(w, x))) > HYPERPLANE_TOLERANCE:
        return 0.0
    vdm = 1.0
    for s in dist.block_slices():
        b = x[s]
        if np.any(np.diff(b) > 0):
            return 0.0
        for i in range(b.size):
            for j in range(i + 1, b.size):
                vdm *= (b[i] - b[j]) ** 2
    return density_constant(dist) * vdm * math.exp(-0.5 * float(np.dot(x, x)))


def hyperplane_basis(dist) -> np.ndarray:
    """Orthonormal basis (rows) of the hyperplane orthogonal to ``sqrt(p)``."""
    w = np.sqrt(as_distribution(dist).sorted_array())
    _, _, vt = np.linalg.svd(w[None, :])
    return vt[1:]


def density_normalization(dist, radius: float = 12.0) -> float:
    """Integral of :func:`eigen_shape_density` over the hyperplane, by quadrature.

    Supported for two and three letters; the region's walls are passed to
    the integrator as breakpoints.
    """
    dist = as_distribution(dist)
    basis = hyperplane_basis(dist)
    f = lambda y: eigen_shape_density(y @ basis, dist)
    if dist.m == 2:
        return integrate.quad(lambda t: f(np.array([t])), -radius, radius, points=[0.0],
                              epsabs=1e-12, epsrel=1e-10, limit=200)[0]
    if dist.m == 3:
        walls = []
        for s in dist.block_slices():
            for i in range(s.start, s.stop - 1):
                a, b = basis[0, i] - basis[0, i + 1], basis[1, i] - basis[1, i + 1]
                th = math.atan2(-a, b) % math.pi
                walls += [th, th + math.pi]
        walls = sorted(walls)

        def radial(th):
            u = np.array([math.cos(th), math.sin(th)])
            return integrate.quad(lambda r: r * f(r * u), 0.0, radius,
                                  epsabs=1e-13, epsrel=1e-11, limit=200)[0]

        total = 0.0
        edges = [0.0] + walls + [2 * math.pi]
        for lo, hi in zip(edges, edges[1:]):
            if hi - lo > 1e-14:
                mid = 0.5 * (lo + hi)
                # the indicator is constant on each sector, skip empty ones
                if f(np.array([math.cos(mid), math.sin(mid)])) == 0.0:
                    continue
                total += integrate.quad(radial, lo, hi, epsabs=1e-12, epsrel=1e-10, limit=200)[0]
        return total
    raise ValueError("density quadrature is only implemented for 2 or 3 letters")


@dataclass(frozen=True)
class ScalingReport:
    m: int
    trials: int
    top_scaled: np.ndarray
    traceless_top_scaled: np.ndarray
    semicircle_ks: np.ndarray
    chi_max_ratio: float
    chi_bound: float

    @property
    def mean_top_scaled(self) -> float:
        return float(np.mean(self.top_scaled))

    @property
    def mean_traceless_top_scaled(self) -> float:
        return float(np.mean(self.traceless_top_scaled))

    @property
    def max_semicircle_ks(self) -> float:
        return float(np.max(self.semicircle_ks))

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "trials": self.trials,
            "mean_top_scaled": self.mean_top_scaled,
            "mean_traceless_top_scaled": self.mean_traceless_top_scaled,
            "mean_semicircle_ks": float(np.mean(self.semicircle_ks)),
            "max_semicircle_ks": self.max_semicircle_ks,
            "chi_max_ratio": self.chi_max_ratio,
            "chi_bound": self.chi_bound,
        }


def chi_square_max_bound(m: int) -> float:
    return 1.0 + 2.0 * math.sqrt(2.0 * math.log(m) / m)


def scaling_stats(m: int, trials: int, rng: np.random.Generator, chi_trials: int | None = None) -> ScalingReport:
    """Top-eigenvalue, semicircle and chi-square-maximum statistics for ``m x m`` GUE.

    Spectra come from the chi-band tridiagonal model.  The traceless top
    eigenvalue subtracts ``trace / m``.  The chi statistic averages
    ``max_{k <= m} chi^2_k / m`` over ``chi_trials`` draws (default ``max(trials, 2000)``).
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    diag, off = tridiagonal_gue_arrays(m, trials, rng)
    vals = tridiagonal_eigvals_many(diag, off)
    root = math.sqrt(m)
    top = vals[:, -1] / root
    traceless_top = (vals[:, -1] - diag.sum(axis=1) / m) / root
    ks = np.array([ks_statistic(v / root, semicircle_cdf) for v in vals]) if m > 1 else np.ones(trials)
    chi_trials = chi_trials or max(trials, 2000)
    chi_sq = sample_chi(np.arange(1, m + 1), rng, size=chi_trials) ** 2
    chi_ratio = float(np.mean(chi_sq.max(axis=1)) / m)
    return ScalingReport(m, trials, top, traceless_top, ks, chi_ratio, chi_square_max_bound(m))
