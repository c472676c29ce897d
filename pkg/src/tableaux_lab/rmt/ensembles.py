"""GUE, block-GUE and chi-band samplers, and the weighted traceless shift."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..combinat import AlphabetDistribution, as_distribution
from ..errors import BlockMismatch
from .eigen import (BlockSpec, HermitianMatrix, Spectrum, TridiagonalModel, eigvals,
                    eigvals_many)

CHI_SUM_OF_SQUARES_MAX_DOF = 32
SHIFT_AGREEMENT_TOLERANCE = 1e-9


def gue_stack(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent ``n x n`` GUE matrices as a complex array."""
    if n < 1:
        raise ValueError("n must be positive")
    g = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    upper = np.triu(g, 1) * np.sqrt(0.5)
    diag = rng.standard_normal((count, n))
    out = upper + np.conj(np.swapaxes(upper, 1, 2))
    idx = np.arange(n)
    out[:, idx, idx] = diag
    return out


def sample_gue(n: int, rng: np.random.Generator) -> HermitianMatrix:
    return HermitianMatrix(gue_stack(n, 1, rng)[0])


def _as_blocks(blocks) -> BlockSpec:
    if isinstance(blocks, BlockSpec):
        return blocks
    if isinstance(blocks, AlphabetDistribution):
        return BlockSpec(blocks.mults)
    return BlockSpec(tuple(blocks))


def block_gue_stack(blocks, count: int, rng: np.random.Generator) -> np.ndarray:
    spec = _as_blocks(blocks)
    out = np.zeros((count, spec.m, spec.m), dtype=np.complex128)
    for s, d in zip(spec.slices(), spec.dims):
        out[:, s, s] = gue_stack(d, count, rng)
    return out


def sample_block_gue(blocks, rng: np.random.Generator) -> HermitianMatrix:
    return HermitianMatrix(block_gue_stack(blocks, 1, rng)[0])


def _check_blocks(a: np.ndarray, dist: AlphabetDistribution) -> None:
    if a.shape != (dist.m, dist.m):
        raise BlockMismatch(f"matrix is {a.shape}, alphabet has {dist.m} letters")
    mask = np.ones(a.shape, dtype=bool)
    for s in dist.block_slices():
        mask[s, s] = False
    if np.any(a[mask] != 0):
        raise BlockMismatch(f"matrix has entries outside the blocks {dist.mults}")


def traceless_transform(x, dist) -> HermitianMatrix:
    """Shift the diagonal so that ``sum_i sqrt(p_i) * out[i, i] == 0``.

    Probabilities are taken in tau-order, matching the block layout.
    """
    dist = as_distribution(dist)
    a = np.array(x.entries if isinstance(x, HermitianMatrix) else x, dtype=np.complex128)
    _check_blocks(a, dist)
    w = np.sqrt(dist.sorted_array())
    shift = w * float(np.dot(w, a.diagonal().real))
    idx = np.arange(dist.m)
    a[idx, idx] = a.diagonal().real - shift
    return HermitianMatrix(a)


def sigma0_matrix(dist) -> np.ndarray:
    """Covariance ``I - sqrt(p) sqrt(p)^T`` of the shifted diagonal."""
    w = np.sqrt(as_distribution(dist).sorted_array())
    return np.eye(w.size) - np.outer(w, w)


def sample_degenerate_gaussian(dist, rng: np.random.Generator, count: int | None = None) -> np.ndarray:
    """``sqrt(p_i) * g`` with one shared standard normal ``g`` per draw."""
    w = np.sqrt(as_distribution(dist).sorted_array())
    if count is None:
        return w * rng.standard_normal()
    return rng.standard_normal((count, 1)) * w


def sample_chi(dof: np.ndarray | int, rng: np.random.Generator, size=None) -> np.ndarray:
    """Chi variates: root sum of squares for small degrees, gamma sampling above."""
    dof = np.asarray(dof, dtype=np.int64)
    shape = dof.shape if size is None else tuple(np.atleast_1d(size)) + dof.shape
    dof_b = np.broadcast_to(dof, shape)
    out = np.empty(shape)
    small = dof_b <= CHI_SUM_OF_SQUARES_MAX_DOF
    if np.any(small):
        kmax = int(dof_b[small].max()) if dof_b[small].size else 0
        g = rng.standard_normal(shape + (kmax,))
        keep = np.arange(kmax) < dof_b[..., None]
        out[small] = np.sqrt(np.sum(np.where(keep, g * g, 0.0), axis=-1))[small]
    if np.any(~small):
        big = dof_b[~small]
        out[~small] = np.sqrt(2.0 * rng.standard_gamma(big / 2.0))
    return out


def tridiagonal_gue_arrays(m: int, count: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Diagonals and off-diagonals of ``count`` chi-band models of the ``m x m`` GUE.

    Off-diagonal ``k`` (0-based) is ``chi_{2(m-1-k)} / sqrt(2)``: each
    Householder step collapses ``m-1-k`` complex Gaussians of variance 1.
    """
    if m < 1:
        raise ValueError("m must be positive")
    diag = rng.standard_normal((count, m))
    dof = 2 * np.arange(m - 1, 0, -1)
    off = sample_chi(dof, rng, size=count) / np.sqrt(2.0) if m > 1 else np.zeros((count, 0))
    return diag, off


def sample_tridiagonal_gue(m: int, rng: np.random.Generator) -> TridiagonalModel:
    d, e = tridiagonal_gue_arrays(m, 1, rng)
    return TridiagonalModel(d[0], e[0])


def gershgorin_intervals(model: TridiagonalModel) -> np.ndarray:
    """Rows ``[centre - radius, centre + radius]`` of the Gershgorin discs."""
    e = np.concatenate([[0.0], model.offdiag, [0.0]])
    radius = e[:-1] + e[1:]
    return np.column_stack([model.diag - radius, model.diag + radius])


class BlockSpectrumSample(NamedTuple):
    xi: Spectrum
    xi0: Spectrum
    diag_sum: float


def _descending_blocks(vals_asc: np.ndarray) -> np.ndarray:
    return vals_asc[..., ::-1]


def block_spectra(dist, count: int, rng: np.random.Generator) -> dict[str, np.ndarray]:
    """Batched block-GUE spectra and their weighted traceless shifts.

    Returns arrays ``xi``, ``xi0`` (shift via the diagonal), ``xi0_eig``
    (shift via the eigenvalues) of shape ``(count, M)``, and ``diag_sum``.
    Values are descending within blocks and blocks follow tau-order.
    """
    dist = as_distribution(dist)
    w = np.sqrt(dist.sorted_array())
    xi = np.empty((count, dist.m))
    diag = np.empty((count, dist.m))
    for s, d in zip(dist.block_slices(), dist.mults):
        stack = gue_stack(d, count, rng)
        diag[:, s] = np.diagonal(stack, axis1=1, axis2=2).real
        if d == 1:
            xi[:, s] = diag[:, s]
        else:
            xi[:, s] = _descending_blocks(eigvals_many(stack))
    diag_sum = diag @ w
    eig_sum = xi @ w
    return {
        "xi": xi,
        "xi0": xi - np.outer(diag_sum, w),
        "xi0_eig": xi - np.outer(eig_sum, w),
        "diag_sum": diag_sum,
    }


def ordered_block_spectrum(dist, rng: np.random.Generator) -> BlockSpectrumSample:
    """One block-GUE draw: spectrum ``xi``, shifted ``xi0`` and ``sum sqrt(p) X_ll``.

    The shift is computed from the diagonal and from the eigenvalues; the two
    must agree since each block's trace equals its eigenvalue sum.
    """
    dist = as_distribution(dist)
    x = sample_block_gue(dist, rng).entries
    w = np.sqrt(dist.sorted_array())
    xi = np.concatenate([eigvals(x[s, s]).values[::-1] for s in dist.block_slices()])
    diag_sum = float(np.dot(w, x.diagonal().real))
    xi0 = xi - w * diag_sum
    xi0_eig = xi - w * float(np.dot(w, xi))
    gap = float(np.max(np.abs(xi0 - xi0_eig)))
    if gap > SHIFT_AGREEMENT_TOLERANCE:
        raise AssertionError(f"shift formulas disagree by {gap}")
    blocks = BlockSpec(dist.mults)
    return BlockSpectrumSample(Spectrum(xi, blocks, True), Spectrum(xi0, blocks, True), diag_sum)
