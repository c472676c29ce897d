import json

import numpy as np
import pytest

from tableaux_lab.harness import DEFAULT_THRESHOLDS, ExperimentConfig, run
from tableaux_lab.harness.cli import main
from tableaux_lab.harness.experiments import spectra, word_shapes

SMALL = {
    "chunk": 200,
    "top_m": 30, "top_trials": 5, "chi_m": 20, "chi_trials": 200,
    "concentration_n": 500, "concentration_samples": 300,
    "stabilization_d": [5, 10], "stabilization_n": 2000, "stabilization_samples": 200,
    "centering_samples": 100,
    "dp_grids": 20, "refinement_n": [50, 100],
    "greene_random_words": 50,
    "exact_max_n": {"2": 4, "3": 3}, "schur_max_size": 4, "charlier_alphas": [1],
    "depoisson_max_n": 4, "greene_exhaustive_max_n": 4,
}


def small(experiment, **kw):
    params = {**SMALL, **kw.pop("params", {})}
    return ExperimentConfig(experiment=experiment, samples=kw.pop("samples", 400), n_word=kw.pop("n_word", 400),
                            grid_n=kw.pop("grid_n", 100), params=params, **kw)


class TestConfig:
    def test_defaults_match_thresholds(self):
        cfg = ExperimentConfig()
        assert cfg.thresholds == DEFAULT_THRESHOLDS
        assert cfg.thresholds["limit_shape_ks"] == 0.05 and cfg.thresholds["spectrum_ks"] == 0.015

    def test_overrides_are_kept(self):
        cfg = ExperimentConfig(thresholds={"limit_shape_ks": 0.2})
        assert cfg.thresholds["limit_shape_ks"] == 0.2 and cfg.thresholds["spectrum_ks"] == 0.015

    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(experiment="nope")
        with pytest.raises(ValueError):
            ExperimentConfig(samples=0)
        with pytest.raises(ValueError):
            ExperimentConfig(probs=[0.5, 0.4])
        with pytest.raises(ValueError):
            ExperimentConfig(thresholds={"made_up": 1})
        with pytest.raises(ValueError):
            ExperimentConfig.from_dict({"colour": "red"})

    def test_streams_are_independent_and_stable(self):
        cfg = ExperimentConfig(seed=5)
        a = cfg.rng(1, 0).random(3)
        assert np.array_equal(a, ExperimentConfig(seed=5).rng(1, 0).random(3))
        assert not np.array_equal(a, cfg.rng(2, 0).random(3))
        assert not np.array_equal(a, cfg.rng(1, 1).random(3))

    def test_json_roundtrip(self, tmp_path):
        cfg = ExperimentConfig(experiment="poissonize", alpha=50.0, seed=3)
        path = tmp_path / "c.json"
        path.write_text(json.dumps(cfg.to_dict()))
        assert ExperimentConfig.from_json(path) == cfg


class TestRunners:
    def test_word_sums_are_exact(self):
        cfg = small("limit-shape", probs=[0.5, 0.3, 0.2])
        shapes = word_shapes(cfg, cfg.dist, 123, 50)
        assert np.all(shapes.sum(axis=1) == 123)

    @pytest.mark.parametrize("experiment,kw", [
        ("limit-shape", {}),
        ("spectrum-compare", {"probs": [0.4, 0.4, 0.2]}),
        ("poissonize", {"alpha": 200.0}),
        ("brownian-compare", {}),
        ("scaling", {}),
        ("exact-checks", {}),
    ])
    def test_runs_and_reports(self, experiment, kw):
        report = run(small(experiment, **kw))
        assert report.criteria
        data = json.loads(report.to_json())
        assert data["experiment"] == experiment and isinstance(data["passed"], bool)
        for name, stats in report.ks.items():
            values = stats.values() if isinstance(stats, dict) else stats
            assert all(0 <= v <= 1 for v in values), name

    def test_single_letter_spectrum(self):
        cfg = small("spectrum-compare", probs=[1.0])
        draws = spectra(cfg, cfg.dist, 50, 1)
        assert np.all(draws["xi0"] == 0)
        assert np.array_equal(draws["xi"][:, 0], draws["diag_sum"])
        report = run(cfg)
        assert all(c.passed for c in report.criteria if c.name.startswith("shift") or c.name.startswith("weighted"))

    def test_exact_checks_rational(self):
        report = run(small("exact-checks", exact_rational=True))
        assert report.passed

    def test_poissonize_needs_alpha(self):
        with pytest.raises(ValueError):
            run(small("poissonize"))

    def test_thresholds_are_applied_verbatim(self):
        strict = run(small("limit-shape", thresholds={"limit_shape_ks": 0.0}))
        assert not strict.passed
        assert all(c.threshold == 0.0 for c in strict.criteria if c.name.startswith("limit-shape ks"))


class TestCli:
    def run_cli(self, tmp_path, name, config, *extra):
        cfg_path = tmp_path / f"{name}.json"
        cfg_path.write_text(json.dumps(config))
        out = tmp_path / name
        code = main([config.get("experiment", "limit-shape"), "--config", str(cfg_path), "--out", str(out), *extra])
        return code, out

    def test_reproducible_output(self, tmp_path):
        config = {"experiment": "limit-shape", "samples": 300, "n_word": 300, "seed": 11, "params": {"chunk": 100}}
        code_a, out_a = self.run_cli(tmp_path, "a", config)
        code_b, out_b = self.run_cli(tmp_path, "b", config)
        assert code_a == code_b
        files = sorted(p.name for p in out_a.iterdir())
        assert "limit-shape-report.json" in files and "limit-shape-word.csv" in files
        for name in files:
            assert (out_a / name).read_bytes() == (out_b / name).read_bytes()

    def test_seed_flag_changes_samples(self, tmp_path):
        config = {"experiment": "limit-shape", "samples": 100, "n_word": 100, "params": {"chunk": 50}}
        _, out_a = self.run_cli(tmp_path, "a", config, "--seed", "1")
        _, out_b = self.run_cli(tmp_path, "b", config, "--seed", "2")
        assert (out_a / "limit-shape-word.csv").read_text() != (out_b / "limit-shape-word.csv").read_text()
        assert json.loads((out_a / "limit-shape-report.json").read_text())["seed"] == 1

    def test_exit_codes(self, tmp_path, capsys):
        ok = {"experiment": "exact-checks", "params": SMALL}
        assert self.run_cli(tmp_path, "ok", ok, "--exact-rational")[0] == 0
        failing = {"experiment": "limit-shape", "samples": 100, "n_word": 100,
                   "thresholds": {"limit_shape_ks": 0.0}}
        code, out = self.run_cli(tmp_path, "bad", failing)
        assert code == 1
        report = json.loads((out / "limit-shape-report.json").read_text())
        assert report["failures"] and not report["passed"]
        assert "FAIL" in capsys.readouterr().out

    def test_bad_config(self, tmp_path):
        assert self.run_cli(tmp_path, "bad", {"experiment": "limit-shape", "samples": 0})[0] == 2
