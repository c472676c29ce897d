"""Acceptance criteria, one test each, at the stated tolerances and sizes.

Every test appends a ``PASS``/``FAIL`` line that is printed in the pytest
terminal summary.
"""

import time

import numpy as np
import pytest

from oracles import charpoly_roots
from tableaux_lab import rmt
from tableaux_lab.combinat import build_block_structure
from tableaux_lab.harness import ExperimentConfig, run_brownian_compare, run_limit_shape, run_spectrum_compare
from tableaux_lab.harness import experiments as ex
from tableaux_lab.harness.report import ComparisonReport
from tableaux_lab.stats import ks_statistic

pytestmark = pytest.mark.slow

SEED = 20240601


def record(log, number, title, ok, detail, elapsed, budget):
    within = elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    log.append(f"criterion {number:>5} {status}  {title}: {detail} [{elapsed:.1f}s / budget {budget:.0f}s]")
    return ok and within


def report_detail(report: ComparisonReport) -> str:
    return "; ".join(c.line() for c in report.criteria)


def run_checks(log, number, title, budget, checks, **cfg_kw):
    cfg = ExperimentConfig(seed=SEED, **cfg_kw)
    report = ComparisonReport(cfg.experiment, cfg.seed, cfg.to_dict())
    start = time.perf_counter()
    for check in checks:
        check(report, cfg)
    elapsed = time.perf_counter() - start
    assert record(log, number, title, report.passed, report_detail(report), elapsed, budget), report.summary()


def test_c01_exact_pushforward(acceptance_log):
    run_checks(acceptance_log, 1, "shape pmf = word enumeration", 60, [ex.check_pmf_pushforward],
               experiment="exact-checks")


def test_c02_schur_repeated_variables(acceptance_log):
    run_checks(acceptance_log, 2, "schur alternant = tableau sum", 60, [ex.check_schur], experiment="exact-checks")


def test_c03_poissonization(acceptance_log):
    run_checks(acceptance_log, 3, "charlier = poisson mixture", 120, [ex.check_charlier], experiment="exact-checks")


def test_c04_depoissonization_monotone(acceptance_log):
    run_checks(acceptance_log, 4, "box probabilities monotone in N", 60, [ex.check_depoisson],
               experiment="exact-checks", exact_rational=True)


def test_c05_greene(acceptance_log):
    run_checks(acceptance_log, 5, "greene sums = shape partial sums", 120, [ex.check_greene],
               experiment="exact-checks")


def test_c06_eigensolver(acceptance_log):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst_root = 0.0
    for i in range(1000):
        n = 1 + i % 4
        x = rmt.sample_gue(n, rng).entries
        worst_root = max(worst_root, float(np.max(np.abs(rmt.eigvals(x).values - charpoly_roots(x)))))
    worst_trace = worst_frob = 0.0
    for n in range(1, 51):
        for _ in range(4):
            x = rmt.sample_gue(n, rng).entries
            vals = rmt.eigvals(x).values
            norm = np.linalg.norm(x)
            worst_trace = max(worst_trace, abs(vals.sum() - x.trace().real) / norm)
            worst_frob = max(worst_frob, abs(np.sum(vals**2) - norm**2) / norm**2)
    elapsed = time.perf_counter() - start
    ok = worst_root <= 1e-9 and worst_trace <= 1e-9 and worst_frob <= 1e-9
    detail = f"charpoly gap {worst_root:.2e}, trace {worst_trace:.2e}, frobenius {worst_frob:.2e} (tol 1e-9)"
    assert record(acceptance_log, 6, "eigensolver vs characteristic polynomial", ok, detail, elapsed, 60)


def test_c07_tridiagonal_law(acceptance_log):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    d, e = rmt.tridiagonal_gue_arrays(50, 10**4, rng)
    band = rmt.tridiagonal_eigvals_many(d, e)[:, -1]
    dense = np.concatenate([rmt.eigvals_many(rmt.gue_stack(50, 1000, rng))[:, -1] for _ in range(10)])
    ks = ks_statistic(band, dense)
    elapsed = time.perf_counter() - start
    assert record(acceptance_log, 7, "chi-band vs dense GUE top eigenvalue", ks <= 0.02,
                  f"ks {ks:.4f} (tol 0.02)", elapsed, 120)


def test_c08_shift_identities(acceptance_log):
    start = time.perf_counter()
    worst_gap = worst_sum = 0.0
    for i, probs in enumerate([[1.0], [0.5, 0.5], [0.7, 0.3], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2], [1 / 3] * 3]):
        dist = build_block_structure(probs)
        draws = rmt.block_spectra(dist, 10**5, np.random.default_rng([SEED, i]))
        w = np.sqrt(dist.sorted_array())
        worst_gap = max(worst_gap, float(np.max(np.abs(draws["xi0"] - draws["xi0_eig"]))))
        worst_sum = max(worst_sum, float(np.max(np.abs(draws["xi0"] @ w))))
    elapsed = time.perf_counter() - start
    ok = worst_gap <= 1e-9 and worst_sum <= 1e-9
    assert record(acceptance_log, 8, "shift formulas agree, weighted sum vanishes", ok,
                  f"gap {worst_gap:.2e}, weighted sum {worst_sum:.2e} (tol 1e-9)", elapsed, 60)


@pytest.mark.parametrize("probs", [[0.5, 0.5], [0.5, 0.3, 0.2], [0.4, 0.4, 0.2]])
def test_c09_gaussian_decomposition(acceptance_log, probs):
    cfg = ExperimentConfig(experiment="spectrum-compare", probs=probs, samples=10**5, seed=SEED)
    start = time.perf_counter()
    report = run_spectrum_compare(cfg)
    elapsed = time.perf_counter() - start
    assert record(acceptance_log, 9, f"xi vs xi0 + Z, p={probs}", report.passed, report_detail(report),
                  elapsed, 180 / 3), report.summary()


def test_c10_density_normalization(acceptance_log):
    start = time.perf_counter()
    totals = {str(p): rmt.density_normalization(p) for p in ([0.5, 0.5], [0.7, 0.3])}
    elapsed = time.perf_counter() - start
    ok = all(abs(v - 1) <= 1e-3 for v in totals.values())
    detail = ", ".join(f"{k}: {v:.10f}" for k, v in totals.items()) + " (tol 1e-3)"
    assert record(acceptance_log, 10, "density integrates to one", ok, detail, elapsed, 10)


@pytest.mark.parametrize("probs", [[0.5, 0.5], [0.7, 0.3]])
def test_c11_limit_shape(acceptance_log, probs):
    cfg = ExperimentConfig(experiment="limit-shape", probs=probs, n_word=5000, samples=10**4, seed=SEED)
    start = time.perf_counter()
    report = run_limit_shape(cfg)
    elapsed = time.perf_counter() - start
    assert record(acceptance_log, 11, f"word shape vs xi0, p={probs}", report.passed, report_detail(report),
                  elapsed, 300 / 2), report.summary()


def test_c12_brownian_functional(acceptance_log):
    cfg = ExperimentConfig(experiment="brownian-compare", probs=[0.5, 0.5], grid_n=2000, samples=10**4, seed=SEED)
    start = time.perf_counter()
    report = run_brownian_compare(cfg)
    elapsed = time.perf_counter() - start
    assert record(acceptance_log, 12, "dp = enumeration; lhat vs traceless top eigenvalue", report.passed,
                  report_detail(report), elapsed, 300), report.summary()


def test_c13_top_eigenvalue_scaling(acceptance_log):
    run_checks(acceptance_log, 13, "top eigenvalue, semicircle, chi-square maximum", 180, [ex.check_top_eigenvalue],
               experiment="scaling")


def test_c14_concentration(acceptance_log):
    run_checks(acceptance_log, 14, "top row concentration", 120, [ex.check_concentration],
               experiment="scaling", probs=[0.5, 0.5])


@pytest.mark.xfail(reason="finite-N bias: at N=1e5 the d=200 alphabet is far from the N >> d^2 regime; "
                          "the gap closes as N grows (see README)", strict=False)
def test_proxy_tracy_widom_stabilization(acceptance_log):
    run_checks(acceptance_log, "proxy", "scaled LI_N stabilizes across d", 300, [ex.check_stabilization],
               experiment="scaling")
