"""Bernoulli trial model and the longest-run scanner."""

import math
from dataclasses import dataclass, field
from typing import Iterable


@dataclass(frozen=True)
class BernoulliModel:
    """Success probability p with the derived q = 1 - p and ln(1/p)."""

    p: float
    q: float = field(init=False)
    lambda_p: float = field(init=False)

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        object.__setattr__(self, "q", 1.0 - self.p)
        object.__setattr__(self, "lambda_p", -math.log(self.p))


def nominal_value(n: int, model: BernoulliModel) -> float:
    """Growth scale log_{1/p} n of the longest run; 0 at n = 1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.log(n) / model.lambda_p


def longest_run(bits: Iterable[int]) -> int:
    """Length of the longest contiguous block of 1s (0 for empty input)."""
    best = 0
    cur = 0
    for b in bits:
        if b:
            cur += 1
            if cur > best:
                best = cur
        else:
            cur = 0
    return best
