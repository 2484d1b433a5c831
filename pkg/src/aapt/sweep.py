"""Seeded Monte Carlo sweeps over families of input states.

Sample ``i`` of a sweep draws everything (state, random channel, noise) from a
Philox generator keyed on ``(seed, i)``, so a row depends only on the config
and its index: serial and parallel runs write identical files.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import channels as ch
from . import states as st
from .formats import parse_channel
from .faithfulness import condition_number, is_faithful, kappa_lower_bound, sinisterness
from .linalg import SINGULAR_TOL, SingularMatrix
from .tomography import NoiseModel, aapt

SCHEMA_VERSION = 1
FAMILIES = ("pure", "separable", "mixed", "werner-grid", "x-grid")
CSV_COLUMNS = (
    "index",
    "family",
    "sinisterness",
    "concurrence",
    "kappa",
    "kappa_lb",
    "error_ratio",
    "reconstruction_error",
)


@dataclass(frozen=True)
class SweepConfig:
    state_family: str
    sample_count: int
    sigma: float = 0.0
    channel: dict | str = "random"
    seed: int = 0
    output: str | None = None
    tol: float = SINGULAR_TOL
    workers: int = 1
    schema_version: int = SCHEMA_VERSION
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"unsupported sweep schema version {self.schema_version}")
        if self.state_family not in FAMILIES:
            raise ValueError(f"unknown state family {self.state_family!r}; choose from {FAMILIES}")
        if int(self.sample_count) < 1:
            raise ValueError("sample_count must be at least 1")
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError("sigma must be finite and nonnegative")
        if self.channel != "random" and not isinstance(self.channel, dict):
            raise ValueError("channel must be 'random' or a channel document")

    @classmethod
    def from_json(cls, source) -> "SweepConfig":
        doc = source if isinstance(source, dict) else json.loads(Path(source).read_text())
        known = {k: doc[k] for k in cls.__dataclass_fields__ if k in doc and k != "extra"}
        return cls(**known, extra={k: v for k, v in doc.items() if k not in known})


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(index)])))


def _grid_point(index: int, count: int) -> float:
    return 1.0 if count == 1 else index / (count - 1)


def sample_state(config: SweepConfig, index: int, rng: np.random.Generator) -> np.ndarray:
    family = config.state_family
    if family == "pure":
        return st.random_pure(rng)
    if family == "separable":
        return st.separable_from_spec(st.random_separable(rng))
    if family == "mixed":
        return st.random_mixed(rng)
    t = _grid_point(index, config.sample_count)
    if family == "werner-grid":
        return st.werner_state(t)
    # x-grid: tau = diag(1, u, u, u) for u from -1 (singlet) to 1/3 (separable optimum)
    u = -1 + 4 * t / 3
    return st.x_state([u, u, u])


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def sweep_row(config: SweepConfig, index: int) -> dict:
    rng = sample_rng(config.seed, index)
    rho = sample_state(config, index, rng)
    tau = st.tau_from_rho(rho)
    channel = ch.random_channel(rng) if config.channel == "random" else parse_channel(config.channel)
    conc = st.concurrence_pure(rho) if config.state_family == "pure" else None
    row = {
        "index": index,
        "family": config.state_family,
        "sinisterness": sinisterness(tau),
        "concurrence": conc,
        "kappa": math.inf,
        "kappa_lb": math.inf,
        "error_ratio": None,
        "reconstruction_error": None,
    }
    if not is_faithful(tau, config.tol):
        return row
    row["kappa"] = condition_number(tau, config.tol)
    row["kappa_lb"] = kappa_lower_bound(tau)
    noise = NoiseModel.gaussian(config.sigma) if config.sigma > 0 else NoiseModel()
    try:
        result = aapt(tau, channel, noise, config.tol, rng=rng)
    except SingularMatrix:
        return row
    row["error_ratio"] = result.error_ratio()
    row["reconstruction_error"] = result.error_vs_truth
    return row


def _row_worker(args):
    config, index = args
    return sweep_row(config, index)


def run_sweep(config: SweepConfig) -> list[dict]:
    """All rows of a sweep, in sample-index order."""
    jobs = [(config, i) for i in range(config.sample_count)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(_row_worker, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))
    return [sweep_row(config, i) for i in range(config.sample_count)]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    return buf.getvalue()
