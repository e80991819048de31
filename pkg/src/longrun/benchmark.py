"""Benchmark the compiled recurrence kernel against the pure-Python fallback.

Run with ``python -m longrun.benchmark``.
"""

import argparse
import time

import numpy as np

from longrun import _speedups_py
from longrun.model import BernoulliModel
from longrun.dist import _k_cutoff
from longrun.config import DEFAULT

try:
    from longrun import _speedups
except ImportError:
    _speedups = None


def _time(fn, *args, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-single", type=int, default=10**6)
    parser.add_argument("--n-block", type=int, default=20000)
    parser.add_argument("--p", type=float, default=0.5)
    args = parser.parse_args()

    p = args.p
    q = 1.0 - p
    model = BernoulliModel(p)

    if _speedups is None:
        print("compiled extension not available; showing pure timings only")

    print(f"single-k query, n={args.n_single}, k=10, p={p}")
    t_py = _time(_speedups_py.log_prob_no_run_single, args.n_single, 10, p, q)
    print(f"  pure     {t_py * 1e3:10.2f} ms")
    if _speedups is not None:
        t_c = _time(_speedups.log_prob_no_run_single, args.n_single, 10, p, q)
        print(f"  compiled {t_c * 1e3:10.2f} ms   ({t_py / t_c:.1f}x speedup)")
        a = _speedups_py.log_prob_no_run_single(args.n_single, 10, p, q)
        b = _speedups.log_prob_no_run_single(args.n_single, 10, p, q)
        print(f"  agreement: |delta| = {abs(a - b):.3e}")

    kc = _k_cutoff(args.n_block, model, DEFAULT)
    print(f"full block, n={args.n_block}, k=1..{kc}, p={p}")
    t_py = _time(_speedups_py.log_prob_no_run_block, args.n_block, kc, p, q, repeat=1)
    print(f"  pure     {t_py * 1e3:10.2f} ms")
    if _speedups is not None:
        t_c = _time(_speedups.log_prob_no_run_block, args.n_block, kc, p, q)
        print(f"  compiled {t_c * 1e3:10.2f} ms   ({t_py / t_c:.1f}x speedup)")
        a = _speedups_py.log_prob_no_run_block(args.n_block, kc, p, q)
        b = _speedups.log_prob_no_run_block(args.n_block, kc, p, q)
        print(f"  agreement: max |delta| = {np.max(np.abs(a - b)):.3e}")


if __name__ == "__main__":
    main()
