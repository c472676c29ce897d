"""CSV emission and ingestion for words, pmfs, spectra and sample sets."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exactdist import Pmf
from .rmt.eigen import BlockSpec, Spectrum


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _parse_number(text: str):
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def pmf_to_csv(pmf: Pmf) -> str:
    m = len(pmf.support[0]) if pmf.support else 0
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"lambda_{i}" for i in range(1, m + 1)] + ["prob"])
    for lam, mass in zip(pmf.support, pmf.mass):
        w.writerow([str(x) for x in lam] + [_fmt(mass)])
    return buf.getvalue()


def pmf_from_csv(text: str) -> Pmf:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], [r for r in rows[1:] if r]
    if header[-1] != "prob" or not all(h.startswith("lambda_") for h in header[:-1]):
        raise ValueError(f"unexpected pmf header {header}")
    support = [tuple(int(x) for x in r[:-1]) for r in body]
    mass = [_parse_number(r[-1]) for r in body]
    return Pmf(support, mass)


def spectrum_to_csv(spec: Spectrum) -> str:
    return "\n".join(spec.to_csv_rows()) + "\n"


def spectrum_from_csv(text: str) -> Spectrum:
    rows = list(csv.DictReader(io.StringIO(text)))
    dims: dict[int, int] = {}
    values = []
    for r in rows:
        k = int(r["block"])
        dims[k] = dims.get(k, 0) + 1
        values.append(float(r["value"]))
    blocks = BlockSpec(tuple(dims[k] for k in sorted(dims)))
    ordered = all(np.all(np.diff(b) <= 0) for b in Spectrum(np.array(values), blocks).block_values())
    return Spectrum(np.array(values), blocks, bool(ordered))


def samples_to_csv(samples: np.ndarray) -> str:
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample_id"] + [f"coord_{i}" for i in range(1, samples.shape[1] + 1)])
    for i, row in enumerate(samples, start=1):
        w.writerow([i] + [repr(float(v)) for v in row])
    return buf.getvalue()


def samples_from_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    return np.array([[float(v) for v in r[1:]] for r in rows[1:]])


def write_text(path: Path | str, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path
