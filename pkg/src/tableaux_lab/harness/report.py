"""Comparison reports: criteria, KS statistics, moments and emitted sample sets."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import io as tio
from ..stats import moments


@dataclass
class Criterion:
    name: str
    value: float
    threshold: object
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: value={_short(self.value)} threshold={_short(self.threshold)}" + (
            f" ({self.note})" if self.note else "")


def _short(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_short(v) for v in x) + "]"
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


@dataclass
class ComparisonReport:
    experiment: str
    seed: int
    config: dict
    criteria: list[Criterion] = field(default_factory=list)
    ks: dict = field(default_factory=dict)
    moments: dict = field(default_factory=dict)
    sample_counts: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    sample_sets: dict = field(default_factory=dict, repr=False)

    def check(self, name: str, value, threshold, passed: bool, note: str = "") -> Criterion:
        c = Criterion(name, _jsonable(value), _jsonable(threshold), bool(passed), note)
        self.criteria.append(c)
        return c

    def at_most(self, name: str, value: float, limit: float, note: str = "") -> Criterion:
        return self.check(name, float(value), float(limit), float(value) <= limit, note)

    def add_samples(self, name: str, samples: np.ndarray) -> None:
        samples = np.asarray(samples, dtype=float)
        if samples.ndim == 1:
            samples = samples[:, None]
        self.sample_sets[name] = samples
        self.sample_counts[name] = int(samples.shape[0])
        self.moments[name] = [moments(col) for col in samples.T] if samples.shape[0] >= 2 else []

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def failures(self) -> list[str]:
        return [c.name for c in self.criteria if not c.passed]

    def to_dict(self) -> dict:
        return _jsonable({
            "experiment": self.experiment,
            "seed": self.seed,
            "passed": self.passed,
            "failures": self.failures(),
            "criteria": [c.__dict__ for c in self.criteria],
            "ks": self.ks,
            "moments": self.moments,
            "sample_counts": self.sample_counts,
            "extra": self.extra,
            "config": self.config,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def write(self, out_dir: Path | str) -> list[Path]:
        out = Path(out_dir)
        written = [tio.write_text(out / f"{self.experiment}-report.json", self.to_json() + "\n")]
        for name, samples in sorted(self.sample_sets.items()):
            written.append(tio.write_text(out / f"{self.experiment}-{name}.csv", tio.samples_to_csv(samples)))
        return written

    def summary(self) -> str:
        return "\n".join(c.line() for c in self.criteria)
