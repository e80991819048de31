"""Confidence intervals for a Bernoulli success probability: the longest-run
interval with its bias-corrected point estimate, plus Wilson, Clopper-Pearson
and plain normal-approximation intervals, and the published-table rows.
"""

import io
import csv
import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

from longrun.config import DEFAULT, EULER_GAMMA, NumericConfig
from longrun.special import beta_quantile, std_normal_quantile

Method = Literal["longest_run", "wilson", "clopper_pearson", "normal"]


@dataclass(frozen=True)
class ConfidenceInterval:
    method: Method
    level: float
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise ValueError(
                f"invalid interval ({self.lower}, {self.upper}) for {self.method}"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class RunObservation:
    """Observed longest run and sample proportion from n trials."""

    n: int
    l_obs: int
    p_hat: float

    def __post_init__(self) -> None:
        if not 0 <= self.l_obs <= self.n:
            raise ValueError(f"need 0 <= l_obs <= n, got l_obs={self.l_obs}, n={self.n}")
        if not 0.0 < self.p_hat < 1.0:
            raise ValueError(f"p_hat must lie in (0, 1), got {self.p_hat}")


def estimate_run_length(obs: RunObservation) -> float:
    """Bias-corrected point estimate of the longest run's growth scale:
    l_obs - [log_{1/p_hat}(1 - p_hat) + gamma/ln(1/p_hat) - 1/2].
    """
    lam = -math.log(obs.p_hat)
    correction = math.log1p(-obs.p_hat) / lam + EULER_GAMMA / lam - 0.5
    return obs.l_obs - correction


def lr_interval(n: int, l_hat: float, alpha: float) -> ConfidenceInterval:
    """Longest-run interval
    (exp{-(ln n - ln(alpha/2))/l_hat}, exp{-(ln n - ln(-ln(alpha/2)))/l_hat}).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if l_hat <= 0.0:
        raise ValueError(f"l_hat must be > 0, got {l_hat}")
    neg_log_half_alpha = -math.log(alpha / 2.0)
    if n <= neg_log_half_alpha:
        raise ValueError(
            f"n={n} too small for alpha={alpha}: need n > -ln(alpha/2) "
            f"= {neg_log_half_alpha:.3f}"
        )
    ln_n = math.log(n)
    lower = math.exp(-(ln_n - math.log(alpha / 2.0)) / l_hat)
    upper = math.exp(-(ln_n - math.log(neg_log_half_alpha)) / l_hat)
    return ConfidenceInterval("longest_run", 1.0 - alpha, lower, upper)


def wilson_interval(k: int, n: int, alpha: float) -> ConfidenceInterval:
    """Score interval, no continuity correction."""
    _check_counts(k, n, alpha)
    z = std_normal_quantile(1.0 - alpha / 2.0)
    p_hat = k / n
    denom = 1.0 + z * z / n
    center = (p_hat + z * z / (2.0 * n)) / denom
    half = (
        z * math.sqrt(p_hat * (1.0 - p_hat) / n + z * z / (4.0 * n * n)) / denom
    )
    return ConfidenceInterval(
        "wilson", 1.0 - alpha, max(center - half, 0.0), min(center + half, 1.0)
    )


def clopper_pearson_interval(k: int, n: int, alpha: float) -> ConfidenceInterval:
    """Exact interval via beta quantiles; closed at the boundary counts."""
    _check_counts(k, n, alpha)
    lower = 0.0 if k == 0 else beta_quantile(k, n - k + 1, alpha / 2.0)
    upper = 1.0 if k == n else beta_quantile(k + 1, n - k, 1.0 - alpha / 2.0)
    return ConfidenceInterval("clopper_pearson", 1.0 - alpha, lower, upper)


def normal_interval(k: int, n: int, alpha: float) -> ConfidenceInterval:
    """Wald interval p_hat +/- z sqrt(p_hat(1-p_hat)/n), clipped to [0, 1]."""
    _check_counts(k, n, alpha)
    if k == 0 or k == n:
        raise ValueError("normal interval undefined at k in {0, n} (zero variance)")
    z = std_normal_quantile(1.0 - alpha / 2.0)
    p_hat = k / n
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / n)
    return ConfidenceInterval(
        "normal", 1.0 - alpha, max(p_hat - half, 0.0), min(p_hat + half, 1.0)
    )


def _check_counts(k: int, n: int, alpha: float) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


# Published comparison tables: (block p, n, alpha, sample proportions).
TABLE1_BLOCKS: Sequence[Tuple[float, int, float, Tuple[float, ...]]] = (
    (0.95, 200, 0.05, (0.9650, 0.9450, 0.9600, 0.9500, 0.9700)),
    (0.98, 200, 0.05, (0.9800, 0.9850, 0.9700, 0.9800, 0.9750)),
)
TABLE2_BLOCKS: Sequence[Tuple[float, int, float, Tuple[float, ...]]] = (
    (0.995, 1000, 0.05, (0.9950, 0.9940, 0.9950, 0.9960, 0.9960)),
)

_TABLE_METHODS = {1: ("wilson", "clopper_pearson"), 2: ("normal", "wilson", "clopper_pearson")}

CSV_COLUMNS = (
    "table_id",
    "block_p",
    "p_hat",
    "n",
    "alpha",
    "method",
    "lower",
    "upper",
    "lower_4dp",
    "upper_4dp",
)


@dataclass(frozen=True)
class TableRow:
    table_id: int
    block_p: float
    p_hat: float
    n: int
    alpha: float
    method: str
    lower: float
    upper: float

    @property
    def lower_4dp(self) -> float:
        return round(self.lower, 4)

    @property
    def upper_4dp(self) -> float:
        return round(self.upper, 4)


def reproduce_table(which: int, l_obs: Optional[int] = None) -> List[TableRow]:
    """Recompute every interval cell from (p_hat, n, alpha), recovering the
    success count as k = round(p_hat * n) (exact for every published cell).

    Longest-run rows need an observed run, which the published tables do not
    report; pass ``l_obs`` to append them as formula demonstrations.
    """
    if which not in (1, 2):
        raise ValueError(f"table must be 1 or 2, got {which}")
    blocks = TABLE1_BLOCKS if which == 1 else TABLE2_BLOCKS
    builders = {
        "wilson": wilson_interval,
        "clopper_pearson": clopper_pearson_interval,
        "normal": normal_interval,
    }
    rows: List[TableRow] = []
    for block_p, n, alpha, p_hats in blocks:
        for p_hat in p_hats:
            k = round(p_hat * n)
            for method in _TABLE_METHODS[which]:
                ci = builders[method](k, n, alpha)
                rows.append(
                    TableRow(which, block_p, p_hat, n, alpha, method, ci.lower, ci.upper)
                )
            if l_obs is not None:
                l_hat = estimate_run_length(RunObservation(n, l_obs, p_hat))
                ci = lr_interval(n, l_hat, alpha)
                rows.append(
                    TableRow(
                        which, block_p, p_hat, n, alpha, "longest_run", ci.lower, ci.upper
                    )
                )
    return rows


def table_to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.table_id,
                repr(r.block_p),
                repr(r.p_hat),
                r.n,
                repr(r.alpha),
                r.method,
                repr(r.lower),
                repr(r.upper),
                f"{r.lower_4dp:.4f}",
                f"{r.upper_4dp:.4f}",
            ]
        )
    return buf.getvalue()
