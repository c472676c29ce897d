"""Experiment runners.

Each ``check_*`` function appends its criteria to a report; ``run_*``
functions bundle the checks belonging to one experiment.  Random streams
are numbered per check so adding a check never perturbs another one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from .. import brownian, exactdist
from .._kernels import longest_weakly_increasing_batch, rsk_shapes, rsk_shapes_ragged
from ..combinat import (AlphabetDistribution, build_block_structure, exhaustive_shape_pmf,
                        greene_sums, greene_sums_bruteforce, rsk_shape, sample_words)
from ..rmt import block_spectra, sample_degenerate_gaussian, scaling_stats
from ..stats import ks_statistic
from .config import ExperimentConfig
from .report import ComparisonReport

# stream ids for the seed sequence (seed, stream, chunk)
WORDS, SPECTRA, SPECTRA_B, GAUSS, GRIDS, LENGTHS, TOP, CHI, CONC, STAB, CENTER, DPGRID, REFINE, GREENE = range(1, 15)


def _chunks(total: int, size: int):
    start = 0
    index = 0
    while start < total:
        count = min(size, total - start)
        yield index, count
        start += count
        index += 1


def _exact_dist(probs) -> AlphabetDistribution:
    return build_block_structure([Fraction(str(p)) if not isinstance(p, Fraction) else p for p in probs])


def _new_report(cfg: ExperimentConfig) -> ComparisonReport:
    return ComparisonReport(cfg.experiment, cfg.seed, cfg.to_dict())


def word_shapes(cfg: ExperimentConfig, dist, n: int, count: int, stream: int = WORDS) -> np.ndarray:
    """RSK shapes of ``count`` iid words of length ``n``."""
    out = np.empty((count, dist.m), dtype=np.int64)
    pos = 0
    for c, size in _chunks(count, cfg.params["chunk"]):
        words = sample_words(dist, n, size, cfg.rng(stream, c))
        out[pos:pos + size] = rsk_shapes(words, dist.m)
        pos += size
    return out


def longest_runs(cfg: ExperimentConfig, dist, n: int, count: int, stream: int) -> np.ndarray:
    out = np.empty(count, dtype=np.int64)
    pos = 0
    chunk = max(1, min(cfg.params["chunk"], 2 * 10**7 // max(n, 1)))
    for c, size in _chunks(count, chunk):
        out[pos:pos + size] = longest_weakly_increasing_batch(sample_words(dist, n, size, cfg.rng(stream, c)))
        pos += size
    return out


def spectra(cfg: ExperimentConfig, dist, count: int, stream: int) -> dict[str, np.ndarray]:
    parts = [block_spectra(dist, size, cfg.rng(stream, c)) for c, size in _chunks(count, 10 * cfg.params["chunk"])]
    return {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}


def _coordinate_ks(report: ComparisonReport, label: str, a: np.ndarray, b: np.ndarray, limit: float,
                   note: str = "") -> list[float]:
    stats = [ks_statistic(a[:, i], b[:, i]) for i in range(a.shape[1])]
    report.ks[label] = stats
    for i, s in enumerate(stats, start=1):
        report.at_most(f"{label}[{i}]", s, limit, note)
    return stats


# exact oracles -----------------------------------------------------------------------


def check_pmf_pushforward(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    atom_tol = cfg.thresholds["pmf_atom_tol"]
    total_tol = cfg.thresholds["pmf_total_tol"]
    worst_atom = worst_total = 0.0
    for probs in cfg.params["exact_alphabets"]:
        dist = _exact_dist(probs) if cfg.exact_rational else build_block_structure(probs)
        for n in range(1, cfg.params["exact_max_n"][str(dist.m)] + 1):
            pmf = exactdist.shape_pmf(dist, n)
            oracle = exhaustive_shape_pmf(dist, n)
            atoms = pmf.as_dict()
            keys = set(atoms) | set(oracle)
            gap = max(abs(float(atoms.get(k, 0) - oracle.get(k, 0))) for k in keys)
            worst_atom = max(worst_atom, gap)
            worst_total = max(worst_total, abs(float(pmf.total()) - 1.0))
    report.at_most("pmf atoms vs word enumeration", worst_atom, atom_tol)
    report.at_most("pmf total mass", worst_total, total_tol)


def check_schur(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    worst = 0.0
    for probs in cfg.params["exact_alphabets"]:
        dist = _exact_dist(probs) if cfg.exact_rational else build_block_structure(probs)
        for size in range(cfg.params["schur_max_size"] + 1):
            for lam in exactdist.partitions(size, dist.m):
                a = exactdist.schur_repeated_det(lam, dist).value
                b = exactdist.schur_ssyt(lam, dist.probs).value
                worst = max(worst, abs(float(a - b)) / max(abs(float(b)), 1e-300))
    report.at_most("schur alternant vs tableau sum (relative)", worst, cfg.thresholds["schur_rel_tol"])


def check_charlier(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    worst_atom = worst_total = worst_tail = 0.0
    for probs in cfg.params["charlier_alphabets"]:
        dist = build_block_structure(probs)
        for alpha in cfg.params["charlier_alphas"]:
            pmf = exactdist.poissonize_pmf(dist, alpha)
            weights = [exactdist.charlier_pmf(lam, alpha, dist) for lam in pmf.support]
            worst_atom = max(worst_atom, max(abs(a - b) for a, b in zip(pmf.mass, weights)))
            worst_total = max(worst_total, abs(math.fsum(weights) - 1.0))
            worst_tail = max(worst_tail, pmf.meta["tail_bound"])
    report.extra["charlier_tail_bound"] = worst_tail
    report.at_most("charlier weight vs poisson mixture", worst_atom, cfg.thresholds["charlier_atom_tol"])
    report.at_most("charlier total mass", worst_total, cfg.thresholds["charlier_total_tol"])


def check_depoisson(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    dist = _exact_dist(cfg.params["depoisson_probs"])
    res = exactdist.depoisson_monotonicity_check(
        dist, range(1, cfg.params["depoisson_max_n"] + 1),
        max_threshold=cfg.params["depoisson_max_threshold"], exact=True)
    report.extra["depoisson_c_fit"] = res.c_fit
    report.check("box probabilities non-increasing in N (rational)", len(res.violations), 0, res.monotone)


def check_greene(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    mismatches = 0
    checked = 0
    for n in range(1, cfg.params["greene_exhaustive_max_n"] + 1):
        for word in product((1, 2), repeat=n):
            lam = rsk_shape(word, 2)
            for l in (1, 2):
                g = greene_sums(word, l, 2)
                b = greene_sums_bruteforce(word, l, 2)
                mismatches += (sum(lam[:l]) != g) + (g != b)
                checked += 1
    rng = cfg.rng(GREENE)
    per_m = cfg.params["greene_random_words"]
    for m in cfg.params["greene_random_ms"]:
        for _ in range(per_m):
            n = int(rng.integers(1, cfg.params["greene_max_n"] + 1))
            word = tuple(int(a) for a in rng.integers(1, m + 1, n))
            lam = rsk_shape(word, m)
            for l in range(1, m + 1):
                mismatches += sum(lam[:l]) != greene_sums(word, l, m)
                checked += 1
    report.extra["greene_checked"] = checked
    report.check("greene sums equal partial shape sums", mismatches, 0, mismatches == 0)


def run_exact_checks(cfg: ExperimentConfig) -> ComparisonReport:
    report = _new_report(cfg)
    for check in (check_pmf_pushforward, check_schur, check_charlier, check_depoisson, check_greene):
        check(report, cfg)
    return report


# word shapes vs spectra ----------------------------------------------------------


def run_limit_shape(cfg: ExperimentConfig) -> ComparisonReport:
    """Scaled word-shape fluctuations against the weighted traceless spectrum."""
    report = _new_report(cfg)
    dist = cfg.dist
    n = cfg.n_word
    p = dist.sorted_array()
    lam = word_shapes(cfg, dist, n, cfg.samples)
    scale = np.sqrt(n * p)
    scaled = (lam - n * p) / scale
    drift = float(np.max(np.abs((scaled * scale).sum(axis=1)))) if cfg.samples else 0.0
    report.at_most("weighted coordinate sum vanishes", drift, 1e-8 * n)
    xi0 = spectra(cfg, dist, cfg.samples, SPECTRA)["xi0"]
    report.add_samples("word", scaled)
    report.add_samples("xi0", xi0)
    _coordinate_ks(report, "limit-shape ks", scaled, xi0, cfg.thresholds["limit_shape_ks"])
    return report


def check_shift_identity(report: ComparisonReport, draws: dict[str, np.ndarray], dist, tol: float) -> None:
    w = np.sqrt(dist.sorted_array())
    gap = float(np.max(np.abs(draws["xi0"] - draws["xi0_eig"])))
    constraint = float(np.max(np.abs(draws["xi0"] @ w)))
    report.at_most("shift via diagonal = shift via eigenvalues", gap, tol)
    report.at_most("weighted sum of shifted spectrum", constraint, tol)


def run_spectrum_compare(cfg: ExperimentConfig) -> ComparisonReport:
    """Block spectrum against traceless spectrum plus an independent rank-one Gaussian."""
    report = _new_report(cfg)
    dist = cfg.dist
    a = spectra(cfg, dist, cfg.samples, SPECTRA)
    b = spectra(cfg, dist, cfg.samples, SPECTRA_B)
    tol = cfg.thresholds["shift_tol"]
    check_shift_identity(report, {k: np.concatenate([a[k], b[k]]) for k in a}, dist, tol)
    z = np.concatenate([sample_degenerate_gaussian(dist, cfg.rng(GAUSS, c), size)
                        for c, size in _chunks(cfg.samples, 10 * cfg.params["chunk"])])
    xi, recombined = a["xi"], b["xi0"] + z
    report.add_samples("xi", xi)
    report.add_samples("xi0_plus_z", recombined)
    if dist.m > 1:
        report.extra["covariance_gap"] = float(np.max(np.abs(np.cov(xi.T) - np.cov(recombined.T))))
    _coordinate_ks(report, "decomposition ks", xi, recombined, cfg.thresholds["spectrum_ks"])
    return report


def _poissonized_shapes(cfg: ExperimentConfig, dist, alpha: float, count: int, stream: int) -> np.ndarray:
    out = np.empty((count, dist.m), dtype=np.int64)
    pos = 0
    for c, size in _chunks(count, cfg.params["chunk"]):
        rng = cfg.rng(stream, c)
        lengths = rng.poisson(alpha, size)
        words = sample_words(dist, int(lengths.max(initial=0)), size, rng)
        out[pos:pos + size] = rsk_shapes_ragged(words, lengths, dist.m)
        pos += size
    return out


def check_centering(report: ComparisonReport, cfg: ExperimentConfig, alpha: float) -> None:
    m = cfg.params["centering_m"]
    dist = build_block_structure([1.0 / m] * m)
    lam1 = _poissonized_shapes(cfg, dist, alpha, cfg.params["centering_samples"], CENTER)[:, 0]
    target = alpha / m + 2 * math.sqrt(m * alpha / m)
    rel = abs(float(lam1.mean()) - target) / target
    report.extra["centering"] = {"mean_lambda1": float(lam1.mean()), "target": target}
    report.at_most("poissonized top row centering (relative)", rel, cfg.thresholds["centering_rel"])


def run_poissonize(cfg: ExperimentConfig) -> ComparisonReport:
    """Poissonized word shapes against the block spectrum, plus the exact Charlier identity."""
    if cfg.alpha is None:
        raise ValueError("the poissonize experiment needs alpha")
    report = _new_report(cfg)
    dist = cfg.dist
    alpha = float(cfg.alpha)
    p = dist.sorted_array()
    lam = _poissonized_shapes(cfg, dist, alpha, cfg.samples, LENGTHS)
    scaled = (lam - alpha * p) / np.sqrt(alpha * p)
    xi = spectra(cfg, dist, cfg.samples, SPECTRA)["xi"]
    report.add_samples("poissonized_word", scaled)
    report.add_samples("xi", xi)
    _coordinate_ks(report, "poissonized ks", scaled, xi, cfg.thresholds["poisson_ks"])
    check_charlier(report, cfg)
    check_centering(report, cfg, alpha)
    return report


# scaling -------------------------------------------------------------------------


def check_top_eigenvalue(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    top = scaling_stats(cfg.params["top_m"], cfg.params["top_trials"], cfg.rng(TOP))
    chi = scaling_stats(cfg.params["chi_m"], 1, cfg.rng(CHI), chi_trials=cfg.params["chi_trials"])
    report.extra["top_eigenvalue"] = top.as_dict()
    report.extra["chi"] = chi.as_dict()
    lo, hi = cfg.thresholds["top_scaled_low"], cfg.thresholds["top_scaled_high"]
    mean = top.mean_top_scaled
    report.check("mean top eigenvalue / sqrt(M)", mean, [lo, hi], lo <= mean <= hi)
    report.at_most("semicircle ks (worst trial)", top.max_semicircle_ks, cfg.thresholds["semicircle_ks"])
    report.at_most("mean max chi^2 / M", chi.chi_max_ratio, chi.chi_bound, "bound 1 + 2 sqrt(2 ln M / M)")


def check_concentration(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    n = cfg.params["concentration_n"]
    lam1 = longest_runs(cfg, cfg.dist, n, cfg.params["concentration_samples"], CONC)
    dev = np.abs(lam1 - lam1.mean()) / math.sqrt(n)
    tails = {}
    for t in cfg.params["concentration_ts"]:
        freq = float(np.mean(dev >= t))
        bound = 2 * math.exp(-t * t / 2)
        tails[t] = freq
        report.at_most(f"top row tail at t={t}", freq, bound)
    report.extra["concentration_tails"] = tails


def check_stabilization(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    n = cfg.params["stabilization_n"]
    scaled = {}
    for d in cfg.params["stabilization_d"]:
        dist = build_block_structure([1.0 / d] * d)
        li = longest_runs(cfg, dist, n, cfg.params["stabilization_samples"], STAB + 100 * d)
        npm = n / d
        scaled[d] = (li - npm - 2 * math.sqrt(d * npm)) / (d ** (-1 / 6) * math.sqrt(npm))
        report.add_samples(f"scaled_li_d{d}", scaled[d])
    ds = cfg.params["stabilization_d"]
    pairs = {f"{a}-{b}": ks_statistic(scaled[a], scaled[b]) for a, b in zip(ds, ds[1:])}
    report.ks["stabilization"] = pairs
    a, b = ds[-2], ds[-1]
    report.at_most(f"stabilization ks d={a} vs d={b}", pairs[f"{a}-{b}"], cfg.thresholds["stabilization_ks"],
                   "proxy for the Tracy-Widom limit")


def run_scaling(cfg: ExperimentConfig) -> ComparisonReport:
    report = _new_report(cfg)
    check_top_eigenvalue(report, cfg)
    check_concentration(report, cfg)
    check_stabilization(report, cfg)
    return report


# brownian functionals ------------------------------------------------------------


def lhat_shapes(cfg: ExperimentConfig, dist, n: int, count: int, stream: int = GRIDS) -> np.ndarray:
    parts = []
    for c, size in _chunks(count, cfg.params["chunk"]):
        inc = brownian.increment_stack(dist, n, size, cfg.rng(stream, c))
        parts.append(brownian.lhat_shape_batch(inc, dist))
    return np.concatenate(parts)


def check_dp_bruteforce(report: ComparisonReport, cfg: ExperimentConfig) -> None:
    rng = cfg.rng(DPGRID)
    worst = 0.0
    alphabets = [[0.5, 0.5], [1 / 3] * 3, [0.4, 0.4, 0.2], [0.5, 0.25, 0.25], [0.3, 0.2, 0.2, 0.2, 0.1]]
    checked = 0
    for _ in range(cfg.params["dp_grids"]):
        dist = build_block_structure(alphabets[int(rng.integers(len(alphabets)))])
        n = int(rng.integers(1, cfg.params["dp_grid_max_n"] + 1))
        grid = brownian.sample_increment_grid(dist, n, rng)
        for l in range(1, dist.m + 1):
            worst = max(worst, abs(brownian.lhat(grid, l) - brownian.lhat_bruteforce(grid, l)))
            checked += 1
    report.extra["dp_checked"] = checked
    report.at_most("dp vs subdivision enumeration", worst, cfg.thresholds["dp_tol"])


def run_brownian_compare(cfg: ExperimentConfig) -> ComparisonReport:
    """Last-passage functionals against the traceless spectrum and against word shapes."""
    report = _new_report(cfg)
    check_dp_bruteforce(report, cfg)
    dist = cfg.dist
    p = dist.sorted_array()
    shapes = lhat_shapes(cfg, dist, cfg.grid_n, cfg.samples)
    report.add_samples("lhat", shapes)
    xi0 = spectra(cfg, dist, cfg.samples, SPECTRA)["xi0"]
    _coordinate_ks(report, "lhat/sqrt(p) vs xi0 ks", shapes / np.sqrt(p), xi0, cfg.thresholds["brownian_ks"])
    n = cfg.n_word
    words = (word_shapes(cfg, dist, n, cfg.samples) - n * p) / math.sqrt(n)
    _coordinate_ks(report, "word vs lhat ks", words, shapes, cfg.thresholds["word_brownian_ks"])
    coarse, fine = cfg.params["refinement_n"]
    a = lhat_shapes(cfg, dist, coarse, cfg.samples, REFINE)
    b = lhat_shapes(cfg, dist, fine, cfg.samples, REFINE + 100)
    _coordinate_ks(report, f"grid refinement ks n={coarse} vs n={fine}", a, b, cfg.thresholds["refinement_ks"])
    return report


RUNNERS = {
    "limit-shape": run_limit_shape,
    "spectrum-compare": run_spectrum_compare,
    "poissonize": run_poissonize,
    "scaling": run_scaling,
    "exact-checks": run_exact_checks,
    "brownian-compare": run_brownian_compare,
}


def run(cfg: ExperimentConfig) -> ComparisonReport:
    return RUNNERS[cfg.experiment](cfg)
