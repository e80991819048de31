"""Shared oracles for the test suite.

The enumeration oracle weighs every binary sequence of length n explicitly,
so it is independent of every recurrence used in the package.
"""

import numpy as np
import pytest

P_GRID = (0.25, 0.5, 0.8, 0.95)


def int_longest_run(x: int) -> int:
    """Longest run of set bits of an integer, by repeated self-AND-shift."""
    count = 0
    while x:
        x &= x << 1
        count += 1
    return count


def enumeration_pmf(n: int, p: float) -> np.ndarray:
    """pmf of the longest success run over all 2^n weighted sequences."""
    codes = np.arange(1 << n, dtype=np.uint64)
    runs = np.array([int_longest_run(int(c)) for c in codes])
    ones = np.array([bin(int(c)).count("1") for c in codes])
    weights = p**ones * (1.0 - p) ** (n - ones)
    return np.bincount(runs, weights=weights, minlength=n + 1)


@pytest.fixture(scope="session")
def enum_pmf():
    cache = {}

    def get(n: int, p: float) -> np.ndarray:
        if (n, p) not in cache:
            cache[(n, p)] = enumeration_pmf(n, p)
        return cache[(n, p)]

    return get
