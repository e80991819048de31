"""Seeded, reproducible simulation: longest-run sampling, empirical checks of
the almost-sure growth law, and coverage experiments for the interval methods.

Replication r draws from a generator derived purely from (master_seed, r), so
reports are identical however the replications are scheduled.
"""

import json
import math
import statistics
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from longrun import inference
from longrun.inference import ConfidenceInterval, RunObservation
from longrun.model import BernoulliModel, nominal_value

GENERATOR_ID = "pcg64/seedseq(master_seed,replication)"

METHODS = ("longest_run", "wilson", "clopper_pearson", "normal")


@dataclass(frozen=True)
class SimulationConfig:
    p: float
    n: int
    alpha: float
    replications: int
    master_seed: int
    methods: Tuple[str, ...] = METHODS

    def __post_init__(self) -> None:
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")


@dataclass(frozen=True)
class MethodCoverage:
    method: str
    covered_count: int
    coverage: float
    mean_width: float
    width_std: float
    skipped: int


@dataclass(frozen=True)
class CoverageReport:
    config: SimulationConfig
    generator: str
    per_method: Tuple[MethodCoverage, ...]
    replications: int
    master_seed: int

    def to_dict(self) -> Dict:
        return {
            "config": {
                "p": self.config.p,
                "n": self.config.n,
                "alpha": self.config.alpha,
                "replications": self.config.replications,
                "master_seed": self.config.master_seed,
                "methods": list(self.config.methods),
            },
            "generator": self.generator,
            "per_method": [
                {
                    "method": m.method,
                    "covered_count": m.covered_count,
                    "coverage": m.coverage,
                    "mean_width": m.mean_width,
                    "width_std": m.width_std,
                    "skipped": m.skipped,
                }
                for m in self.per_method
            ],
            "replications": self.replications,
            "master_seed": self.master_seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        lines = ["method,covered_count,coverage,mean_width,width_std,skipped,replications,master_seed"]
        for m in self.per_method:
            lines.append(
                f"{m.method},{m.covered_count},{m.coverage!r},{m.mean_width!r},"
                f"{m.width_std!r},{m.skipped},{self.replications},{self.master_seed}"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RatioSummary:
    n: int
    p: float
    replications: int
    master_seed: int
    mean: float
    std: float
    min: float
    max: float


def replication_stream(master_seed: int, replication: int) -> np.random.Generator:
    """Generator for one replication, a pure function of (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence((master_seed, replication)))


def sample_longest_run(
    n: int, model: BernoulliModel, stream: np.random.Generator
) -> Tuple[int, int]:
    """One sample of (longest run, success count) from n Bernoulli(p) draws."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    bits = stream.random(n) < model.p
    k = int(bits.sum())
    padded = np.concatenate(([0], bits.astype(np.int8), [0]))
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    if starts.size == 0:
        return 0, k
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max()), k


def _build_interval(
    method: str, n: int, alpha: float, l_obs: int, k: int
) -> Optional[ConfidenceInterval]:
    """None marks a replication where the method is inapplicable."""
    if method == "wilson":
        return inference.wilson_interval(k, n, alpha)
    if method == "clopper_pearson":
        return inference.clopper_pearson_interval(k, n, alpha)
    if method == "normal":
        if k == 0 or k == n:
            return None
        return inference.normal_interval(k, n, alpha)
    if method == "longest_run":
        if k == 0 or k == n:
            return None
        l_hat = inference.estimate_run_length(RunObservation(n, l_obs, k / n))
        if l_hat <= 0.0:
            return None
        return inference.lr_interval(n, l_hat, alpha)
    raise ValueError(f"unknown method {method!r}")


def coverage_experiment(config: SimulationConfig) -> CoverageReport:
    """Per-method empirical coverage and width over seeded replications.

    Inapplicable replications (degenerate counts, nonpositive run estimate)
    are tallied as skipped, never silently dropped.
    """
    model = BernoulliModel(config.p)
    covered = {m: 0 for m in config.methods}
    skipped = {m: 0 for m in config.methods}
    widths: Dict[str, List[float]] = {m: [] for m in config.methods}
    for r in range(config.replications):
        stream = replication_stream(config.master_seed, r)
        l_obs, k = sample_longest_run(config.n, model, stream)
        for method in config.methods:
            ci = _build_interval(method, config.n, config.alpha, l_obs, k)
            if ci is None:
                skipped[method] += 1
                continue
            if ci.lower <= config.p <= ci.upper:
                covered[method] += 1
            widths[method].append(ci.width)
    per_method = []
    for m in config.methods:
        w = widths[m]
        per_method.append(
            MethodCoverage(
                method=m,
                covered_count=covered[m],
                coverage=covered[m] / config.replications,
                mean_width=math.fsum(w) / len(w) if w else math.nan,
                width_std=statistics.pstdev(w) if len(w) > 1 else 0.0,
                skipped=skipped[m],
            )
        )
    return CoverageReport(
        config=config,
        generator=GENERATOR_ID,
        per_method=tuple(per_method),
        replications=config.replications,
        master_seed=config.master_seed,
    )


def empirical_normalized_ratio(
    n: int,
    model: BernoulliModel,
    replications: int,
    master_seed: int,
) -> RatioSummary:
    """Summary statistics of L(n)/log_{1/p} n over seeded replications."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    ell = nominal_value(n, model)
    ratios = []
    for r in range(replications):
        stream = replication_stream(master_seed, r)
        l_obs, _ = sample_longest_run(n, model, stream)
        ratios.append(l_obs / ell)
    return RatioSummary(
        n=n,
        p=model.p,
        replications=replications,
        master_seed=master_seed,
        mean=math.fsum(ratios) / len(ratios),
        std=statistics.pstdev(ratios),
        min=min(ratios),
        max=max(ratios),
    )
