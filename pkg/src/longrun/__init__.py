"""longrun: exact and asymptotic computation for the longest success run
in i.i.d. Bernoulli trials.
"""

from longrun.config import (
    DEFAULT,
    EULER_GAMMA,
    ConvergenceError,
    DivergenceError,
    DomainError,
    NumericConfig,
    ResourceLimitError,
)
from longrun.dist import (
    RunLengthDistribution,
    distribution,
    log_prob_no_run,
    log_tail_pair,
    mean_asymptotic,
    moment,
    tail_bounds,
)
from longrun.kernels import BACKEND
from longrun.model import BernoulliModel, longest_run, nominal_value

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BernoulliModel",
    "ConvergenceError",
    "DEFAULT",
    "DivergenceError",
    "DomainError",
    "EULER_GAMMA",
    "NumericConfig",
    "ResourceLimitError",
    "RunLengthDistribution",
    "distribution",
    "log_prob_no_run",
    "log_tail_pair",
    "longest_run",
    "mean_asymptotic",
    "moment",
    "nominal_value",
    "tail_bounds",
]
