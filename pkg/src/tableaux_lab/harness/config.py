"""Experiment configuration, default thresholds and seed streams."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from ..combinat import build_block_structure

EXPERIMENTS = ("limit-shape", "spectrum-compare", "poissonize", "scaling", "exact-checks", "brownian-compare")

# acceptance thresholds; a run reads these and never adjusts them
DEFAULT_THRESHOLDS = {
    "pmf_atom_tol": 1e-10,
    "pmf_total_tol": 1e-10,
    "schur_rel_tol": 1e-9,
    "charlier_atom_tol": 1e-8,
    "charlier_total_tol": 1e-8,
    "eig_oracle_tol": 1e-9,
    "eig_invariant_rel_tol": 1e-9,
    "tridiagonal_ks": 0.02,
    "shift_tol": 1e-9,
    "spectrum_ks": 0.015,
    "density_tol": 1e-3,
    "limit_shape_ks": 0.05,
    "dp_tol": 1e-12,
    "brownian_ks": 0.05,
    "word_brownian_ks": 0.05,
    "refinement_ks": 0.03,
    "top_scaled_low": 1.85,
    "top_scaled_high": 2.05,
    "semicircle_ks": 0.06,
    "poisson_ks": 0.06,
    "centering_rel": 0.10,
    "stabilization_ks": 0.1,
}

# experiment sizes fixed by the acceptance criteria, overridable through ``params``
DEFAULT_PARAMS = {
    "exact_alphabets": [[0.5, 0.5], [0.7, 0.3], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2]],
    "exact_max_n": {"2": 8, "3": 6},
    "schur_max_size": 8,
    "charlier_alphas": [1, 5, 20],
    "charlier_alphabets": [[0.5, 0.5], [0.7, 0.3], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2]],
    "depoisson_probs": [0.5, 0.5],
    "depoisson_max_threshold": 4,
    "depoisson_max_n": 8,
    "greene_random_words": 10000,
    "greene_random_ms": [3, 4],
    "greene_max_n": 12,
    "greene_exhaustive_max_n": 8,
    "spectrum_alphabets": [[0.5, 0.5], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2]],
    "top_m": 200,
    "top_trials": 50,
    "chi_m": 100,
    "chi_trials": 4000,
    "concentration_n": 10000,
    "concentration_samples": 10000,
    "concentration_ts": [1, 2, 3],
    "stabilization_d": [10, 50, 200],
    "stabilization_n": 100000,
    "stabilization_samples": 2000,
    "centering_m": 10,
    "centering_samples": 2000,
    "dp_grid_max_n": 12,
    "dp_grids": 200,
    "refinement_n": [500, 1000],
    "chunk": 500,
}


@dataclass
class ExperimentConfig:
    experiment: str = "limit-shape"
    probs: list = field(default_factory=lambda: [0.5, 0.5])
    n_word: int = 5000
    samples: int = 10000
    grid_n: int = 2000
    alpha: float | None = None
    seed: int = 0
    exact_rational: bool = False
    thresholds: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        build_block_structure(self.probs)
        unknown = set(self.thresholds) - set(DEFAULT_THRESHOLDS)
        if unknown:
            raise ValueError(f"unknown thresholds {sorted(unknown)}")
        self.thresholds = {**DEFAULT_THRESHOLDS, **self.thresholds}
        self.params = {**DEFAULT_PARAMS, **self.params}
        self.seed = int(self.seed) % 2**64

    @property
    def dist(self):
        return build_block_structure(self.probs)

    def rng(self, stream: int, chunk: int = 0) -> np.random.Generator:
        """Generator for sub-stream ``(seed, stream, chunk)``."""
        return np.random.default_rng(np.random.SeedSequence([self.seed, stream, chunk]))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config fields {sorted(extra)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: Path | str) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))
