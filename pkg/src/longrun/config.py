"""Central numeric configuration: tolerances, caps, shared constants."""

from dataclasses import dataclass

# Euler-Mascheroni constant, literature value.
EULER_GAMMA = 0.577215664901532860606512


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds a configured size cap."""


class ConvergenceError(RuntimeError):
    """An iterative special-function evaluation failed to converge."""


class DivergenceError(RuntimeError):
    """A numeric maximization kept growing past the search horizon."""


@dataclass(frozen=True)
class NumericConfig:
    # size caps
    max_n_single: int = 10**6        # single-k tail queries
    max_n_distribution: int = 10**5  # full distribution materialization
    max_n_recursion: int = 2000      # O(n^2) recursive MGF oracle

    # survival probabilities below exp(tail_log_threshold) switch to the
    # closed-form tail (relative error there is O(that probability))
    tail_log_threshold: float = -60.0

    # regime classification at the critical exponent
    regime_tol: float = 1e-12

    # numeric search defaults
    search_tol: float = 1e-12
    search_grid: int = 129
    search_max_doublings: int = 30

    # special functions
    beta_rel_tol: float = 1e-14
    beta_max_iter: int = 400
    quantile_abs_tol: float = 1e-12


DEFAULT = NumericConfig()
