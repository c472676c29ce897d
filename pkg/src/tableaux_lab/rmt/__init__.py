"""Random-matrix side: GUE samplers, the traceless shift, eigensolver and densities."""

from .density import (ScalingReport, chi_square_max_bound, density_constant, density_normalization,
                      eigen_shape_density, hyperplane_basis, scaling_stats)
from .eigen import (BlockSpec, HermitianMatrix, Spectrum, TridiagonalModel, check_hermitian, eigh,
                    eigvals, eigvals_many, householder_tridiagonalize, tridiagonal_eigvals_many)
from .ensembles import (BlockSpectrumSample, block_gue_stack, block_spectra, gershgorin_intervals,
                        gue_stack, ordered_block_spectrum, sample_block_gue, sample_chi,
                        sample_degenerate_gaussian, sample_gue, sample_tridiagonal_gue, sigma0_matrix,
                        traceless_transform, tridiagonal_gue_arrays)

__all__ = [
    "BlockSpec", "BlockSpectrumSample", "HermitianMatrix", "ScalingReport", "Spectrum", "TridiagonalModel",
    "block_gue_stack", "block_spectra", "check_hermitian", "chi_square_max_bound", "density_constant",
    "density_normalization", "eigen_shape_density", "eigh", "eigvals", "eigvals_many",
    "gershgorin_intervals", "gue_stack", "householder_tridiagonalize", "hyperplane_basis",
    "ordered_block_spectrum", "sample_block_gue", "sample_chi", "sample_degenerate_gaussian",
    "sample_gue", "sample_tridiagonal_gue", "scaling_stats", "sigma0_matrix", "traceless_transform",
    "tridiagonal_eigvals_many", "tridiagonal_gue_arrays",
]
