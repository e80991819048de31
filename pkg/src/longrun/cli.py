"""Command-line front end with JSON/CSV output.

Every run prints a single JSON envelope (command echo, parameters, result,
version) or CSV rows with a header.  ``--quiet`` strips the envelope.  Exit
status: 0 success, 2 bad arguments, 3 numeric domain/resource errors.
"""

import argparse
import json
import math
import sys
from typing import Any, Dict, List, Optional

from longrun import __version__, inference, ldp, mgf, montecarlo, varadhan
from longrun.config import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    ResourceLimitError,
)
from longrun.dist import distribution, log_tail_pair, moment, tail_bounds
from longrun.kernels import BACKEND
from longrun.model import BernoulliModel, nominal_value


def _jsonable(x: Any) -> Any:
    """Round-trip-safe JSON: nonfinite floats become strings."""
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if x == math.inf:
            return "inf"
        if x == -math.inf:
            return "-inf"
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(args: argparse.Namespace, params: Dict[str, Any], result: Any) -> None:
    payload = _jsonable(result)
    if args.quiet:
        print(json.dumps(payload))
        return
    envelope = {
        "command": args.command,
        "params": _jsonable(params),
        "result": payload,
        "version": __version__,
        "backend": BACKEND,
    }
    print(json.dumps(envelope))


def _cmd_dist(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    if args.k is not None:
        lc, lsf = log_tail_pair(args.n, args.k, model)
        lo, hi = tail_bounds(args.n, args.k, model)
        result = {
            "k": args.k,
            "log_cdf": lc,
            "cdf": math.exp(lc),
            "log_sf": lsf,
            "bounds_log": [lo, hi],
            "bounds": [math.exp(lo), math.exp(hi)],
        }
    else:
        d = distribution(args.n, model)
        result = {
            "nominal_value": nominal_value(args.n, model),
            "mean": moment(d, 1),
            "log_cdf": [float(v) for v in d.log_cdf],
            "pmf": [float(v) for v in d.pmf()],
        }
    _emit(args, {"n": args.n, "p": args.p, "k": args.k}, result)


def _cmd_mgf(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    if args.method == "exact":
        value = mgf.log_mgf(distribution(args.n, model), args.lam)
    else:
        value = mgf.log_mgf_recursive(args.n, model, args.lam)
    normalized = value / (
        nominal_value(args.n, model) if args.speed == "near" else args.n
    )
    limit = mgf.limit_normalized_log_mgf(args.lam, model, args.speed)
    gap = abs(normalized - limit) if math.isfinite(limit) else math.inf
    result = {
        "log_mgf": value,
        "normalized": normalized,
        "regime": mgf.MgfRegime.classify(args.lam, model).tag,
        "limit": limit,
        "gap": gap,
    }
    _emit(
        args,
        {"n": args.n, "p": args.p, "lambda": args.lam, "method": args.method, "speed": args.speed},
        result,
    )


def _cmd_rate(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    value = ldp.rate(ldp.RateFunctionSpec(args.family, model), args.x)
    _emit(args, {"family": args.family, "p": args.p, "x": args.x}, {"rate": value})


def _cmd_cumulant(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    value = ldp.cumulant(ldp.CumulantSpec(args.family, model), args.lam)
    _emit(
        args,
        {"family": args.family, "p": args.p, "lambda": args.lam},
        {"cumulant": value},
    )


def _cmd_legendre(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    spec = ldp.CumulantSpec(args.family, model)
    numeric = ldp.legendre_numeric(spec, args.x)
    closed = ldp.rate(ldp.RateFunctionSpec(args.family, model), args.x)
    _emit(
        args,
        {"family": args.family, "p": args.p, "x": args.x},
        {"numeric": numeric, "closed_form": closed},
    )


def _cmd_ldp(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    lam_p = model.lambda_p
    if args.regime == "near-upper":
        if args.x is None:
            raise DomainError("--x is required for regime near-upper")
        finite = ldp.finite_n_upper_near(args.n, args.x, model)
        limit = -args.x * lam_p
    elif args.regime == "near-lower":
        if args.x is None:
            raise DomainError("--x is required for regime near-lower")
        finite = ldp.finite_n_lower_near(args.n, args.x, model)
        limit = args.x * lam_p
    elif args.regime == "away":
        if args.x is None:
            raise DomainError("--x is required for regime away")
        finite = ldp.finite_n_away(args.n, args.x, model)
        limit = -args.x * lam_p
    else:
        if args.a is None or args.b is None:
            raise DomainError("--a and --b are required for regime interval")
        finite = ldp.finite_n_interval_near(args.n, args.a, args.b, model)
        spec = ldp.RateFunctionSpec("near", model)
        limit = -min(
            ldp.rate(spec, args.a), ldp.rate(spec, max(args.a, min(args.b, 1.0))), ldp.rate(spec, args.b)
        )
    _emit(
        args,
        {"regime": args.regime, "n": args.n, "p": args.p, "x": args.x, "a": args.a, "b": args.b},
        {"finite_n": finite, "limit": limit},
    )


def _cmd_varadhan(args: argparse.Namespace) -> None:
    model = BernoulliModel(args.p)
    closed = varadhan.power_coefficient(args.t, args.alpha, model)
    numeric = varadhan.power_coefficient_numeric(args.t, args.alpha, model)
    trajectory: List[Dict[str, float]] = []
    lam_p = model.lambda_p
    f = varadhan.FunctionalSpec.power(args.t * lam_p ** (1.0 - args.alpha), args.alpha)
    for n in args.n_ladder or []:
        value = varadhan.finite_n_functional(n, f, "near", model) / lam_p
        trajectory.append({"n": n, "coefficient": value})
    _emit(
        args,
        {"t": args.t, "alpha": args.alpha, "p": args.p, "n_ladder": args.n_ladder},
        {"closed_form": closed, "numeric": numeric, "finite_n": trajectory},
    )


def _cmd_ci(args: argparse.Namespace) -> None:
    if args.method == "lr":
        if args.l_obs is None or args.p_hat is None:
            raise DomainError("--l-obs and --p-hat are required for method lr")
        obs = inference.RunObservation(args.n, args.l_obs, args.p_hat)
        l_hat = inference.estimate_run_length(obs)
        ci = inference.lr_interval(args.n, l_hat, args.alpha)
        extra = {"l_hat": l_hat}
    else:
        if args.k is None:
            raise DomainError(f"--k is required for method {args.method}")
        builder = {
            "wilson": inference.wilson_interval,
            "cp": inference.clopper_pearson_interval,
            "normal": inference.normal_interval,
        }[args.method]
        ci = builder(args.k, args.n, args.alpha)
        extra = {}
    result = {
        "method": ci.method,
        "level": ci.level,
        "lower": ci.lower,
        "upper": ci.upper,
        "lower_4dp": round(ci.lower, 4),
        "upper_4dp": round(ci.upper, 4),
        **extra,
    }
    _emit(
        args,
        {
            "method": args.method,
            "n": args.n,
            "alpha": args.alpha,
            "k": args.k,
            "l_obs": args.l_obs,
            "p_hat": args.p_hat,
        },
        result,
    )


def _cmd_tables(args: argparse.Namespace) -> None:
    rows = inference.reproduce_table(args.which, l_obs=args.l_obs)
    if args.format == "csv":
        sys.stdout.write(inference.table_to_csv(rows))
        return
    result = [
        {
            "table_id": r.table_id,
            "block_p": r.block_p,
            "p_hat": r.p_hat,
            "n": r.n,
            "alpha": r.alpha,
            "method": r.method,
            "lower": r.lower,
            "upper": r.upper,
            "lower_4dp": r.lower_4dp,
            "upper_4dp": r.upper_4dp,
        }
        for r in rows
    ]
    _emit(args, {"which": args.which, "l_obs": args.l_obs}, result)


def _cmd_simulate(args: argparse.Namespace) -> None:
    if args.simulate_command == "coverage":
        methods = tuple(args.methods) if args.methods else montecarlo.METHODS
        config = montecarlo.SimulationConfig(
            p=args.p,
            n=args.n,
            alpha=args.alpha,
            replications=args.reps,
            master_seed=args.seed,
            methods=methods,
        )
        report = montecarlo.coverage_experiment(config)
        if args.format == "csv":
            sys.stdout.write(report.to_csv())
            return
        _emit(args, {"seed": args.seed, "generator": report.generator}, report.to_dict())
    else:
        model = BernoulliModel(args.p)
        summary = montecarlo.empirical_normalized_ratio(
            args.n, model, args.reps, args.seed
        )
        result = {
            "n": summary.n,
            "p": summary.p,
            "replications": summary.replications,
            "master_seed": summary.master_seed,
            "generator": montecarlo.GENERATOR_ID,
            "mean": summary.mean,
            "std": summary.std,
            "min": summary.min,
            "max": summary.max,
        }
        _emit(args, {"seed": args.seed, "n": args.n, "p": args.p, "reps": args.reps}, result)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="longrun",
        description="Longest-run toolkit: exact laws, deviation asymptotics, "
        "intervals, and simulation.",
    )
    parser.add_argument("--quiet", action="store_true", help="print the bare payload")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("dist", help="exact distribution values and bounds")
    p_dist.add_argument("--n", type=int, required=True)
    p_dist.add_argument("--p", type=float, required=True)
    p_dist.add_argument("--k", type=int)
    p_dist.set_defaults(func=_cmd_dist)

    p_mgf = sub.add_parser("mgf", help="log-MGF, normalized value, limit, gap")
    p_mgf.add_argument("--n", type=int, required=True)
    p_mgf.add_argument("--p", type=float, required=True)
    p_mgf.add_argument("--lambda", dest="lam", type=float, required=True)
    p_mgf.add_argument("--method", choices=("exact", "recursion"), default="exact")
    p_mgf.add_argument("--speed", choices=("near", "away"), default="near")
    p_mgf.set_defaults(func=_cmd_mgf)

    p_rate = sub.add_parser("rate", help="closed-form rate function")
    p_rate.add_argument("--family", choices=("near", "away"), required=True)
    p_rate.add_argument("--p", type=float, required=True)
    p_rate.add_argument("--x", type=float, required=True)
    p_rate.set_defaults(func=_cmd_rate)

    p_cum = sub.add_parser("cumulant", help="closed-form scaled cumulant")
    p_cum.add_argument("--family", choices=("near", "away"), required=True)
    p_cum.add_argument("--p", type=float, required=True)
    p_cum.add_argument("--lambda", dest="lam", type=float, required=True)
    p_cum.set_defaults(func=_cmd_cumulant)

    p_leg = sub.add_parser("legendre", help="numeric Legendre transform vs closed form")
    p_leg.add_argument("--family", choices=("near", "away"), required=True)
    p_leg.add_argument("--p", type=float, required=True)
    p_leg.add_argument("--x", type=float, required=True)
    p_leg.set_defaults(func=_cmd_legendre)

    p_ldp = sub.add_parser("ldp", help="finite-n deviation ratios and their limits")
    p_ldp.add_argument(
        "--regime",
        choices=("near-upper", "near-lower", "away", "interval"),
        required=True,
    )
    p_ldp.add_argument("--n", type=int, required=True)
    p_ldp.add_argument("--p", type=float, required=True)
    p_ldp.add_argument("--x", type=float)
    p_ldp.add_argument("--a", type=float)
    p_ldp.add_argument("--b", type=float)
    p_ldp.set_defaults(func=_cmd_ldp)

    p_var = sub.add_parser("varadhan", help="power-functional coefficient and trajectory")
    p_var.add_argument("--t", type=float, required=True)
    p_var.add_argument("--alpha", type=float, required=True)
    p_var.add_argument("--p", type=float, required=True)
    p_var.add_argument(
        "--n-ladder",
        type=lambda s: [int(v) for v in s.split(",")],
        default=None,
        help="comma-separated n values for the finite-n trajectory",
    )
    p_var.set_defaults(func=_cmd_varadhan)

    p_ci = sub.add_parser("ci", help="confidence intervals")
    p_ci.add_argument("--method", choices=("lr", "wilson", "cp", "normal"), required=True)
    p_ci.add_argument("--n", type=int, required=True)
    p_ci.add_argument("--alpha", type=float, required=True)
    p_ci.add_argument("--k", type=int)
    p_ci.add_argument("--l-obs", dest="l_obs", type=int)
    p_ci.add_argument("--p-hat", dest="p_hat", type=float)
    p_ci.set_defaults(func=_cmd_ci)

    p_tab = sub.add_parser("tables", help="reproduce the published interval tables")
    p_tab.add_argument("--which", type=int, choices=(1, 2), required=True)
    p_tab.add_argument("--format", choices=("json", "csv"), default="json")
    p_tab.add_argument("--l-obs", dest="l_obs", type=int)
    p_tab.set_defaults(func=_cmd_tables)

    p_sim = sub.add_parser("simulate", help="seeded simulation experiments")
    sim_sub = p_sim.add_subparsers(dest="simulate_command", required=True)
    p_cov = sim_sub.add_parser("coverage", help="coverage/width comparison")
    p_cov.add_argument("--p", type=float, required=True)
    p_cov.add_argument("--n", type=int, required=True)
    p_cov.add_argument("--alpha", type=float, required=True)
    p_cov.add_argument("--reps", type=int, required=True)
    p_cov.add_argument("--seed", type=int, required=True)
    p_cov.add_argument("--methods", nargs="+", choices=montecarlo.METHODS)
    p_cov.add_argument("--format", choices=("json", "csv"), default="json")
    p_cov.set_defaults(func=_cmd_simulate)
    p_ratio = sim_sub.add_parser("ratio", help="normalized-ratio summary")
    p_ratio.add_argument("--n", type=int, required=True)
    p_ratio.add_argument("--p", type=float, required=True)
    p_ratio.add_argument("--reps", type=int, required=True)
    p_ratio.add_argument("--seed", type=int, required=True)
    p_ratio.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (
        ValueError,
        DomainError,
        ResourceLimitError,
        ConvergenceError,
        DivergenceError,
    ) as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(error), file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
