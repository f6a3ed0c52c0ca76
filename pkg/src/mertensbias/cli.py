"""Command-line entry point.

Subcommands: constants, eval, scan, verify-positivity, logdensity,
zeros validate, explicit, distribution. Common flags: --format csv|json,
--out PATH, --threads N, --cache-dir PATH. Exit codes: 0 success, 1 domain
error (one-line diagnostic on stderr), 2 usage error.
"""

import argparse
import math
import sys
import time

from mertensbias import __version__
from mertensbias.constants import compute_constants
from mertensbias.distribution import (
    build_model,
    density_grid,
    prob_positive,
    sample_z,
    theoretical_variance,
)
from mertensbias.errors import MertensBiasError
from mertensbias.explicit import explicit_m2, explicit_script_e
from mertensbias.manifest import RunManifest, dumps_json, format_csv, emit
from mertensbias.mertens import (
    empirical_log_density,
    evaluate_many,
    scan,
    verify_positivity,
)
from mertensbias.zeros import load_zeros, validate, zero_sum_identity

DEFAULT_PRIME_LIMIT = 10**6


def _parse_grid(spec: str, log_spaced: bool = True) -> list[float]:
    """Parse 'a:b:n' into an n-point grid, or a single value into [v]."""
    if ":" in spec:
        a, b, n = spec.split(":")
        a, b, n = float(a), float(b), int(n)
        if n < 2 or not a < b:
            raise ValueError(f"bad grid {spec!r}: need a < b and n >= 2")
        if log_spaced:
            if a <= 0:
                raise ValueError("log grid requires positive endpoints")
            xs = [math.exp(v) for v in _linspace(math.log(a), math.log(b), n)]
        else:
            xs = _linspace(a, b, n)
        xs[0], xs[-1] = a, b
        return xs
    return [float(spec)]


def _linspace(a: float, b: float, n: int) -> list[float]:
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _emit_result(args, manifest, csv_header=None, csv_rows=None, json_payload=None):
    fmt = args.format
    if fmt == "csv":
        if csv_header is None:
            raise ValueError("this subcommand has no CSV representation")
        text = format_csv(csv_header, csv_rows)
    else:
        payload = {"manifest": manifest.as_dict(), "result": json_payload}
        text = dumps_json(payload) + "\n"
    emit(text, args.out, manifest)


def _manifest(args, command, **extra) -> RunManifest:
    skip = ("func", "out", "threads", "command", "zeros_command", "default_format")
    params = {
        k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None
    }
    return RunManifest(
        command=command,
        parameters={k: str(v) for k, v in params.items()},
        zero_table_digest=extra.get("zero_table_digest"),
        constants_prime_limit=extra.get("constants_prime_limit"),
        seed=extra.get("seed"),
        tool_version=__version__,
    )


def _cmd_constants(args) -> int:
    t0 = time.perf_counter()
    c = compute_constants(args.prime_limit)
    man = _manifest(args, "constants", constants_prime_limit=args.prime_limit)
    man.wall_time = time.perf_counter() - t0
    payload = {
        "c0": c.c0,
        "E": c.e_const,
        "B": c.b_const,
        "tail_bound": c.tail_bound,
        "prime_limit": c.prime_limit,
    }
    header = ["c0", "E", "B", "tail_bound", "prime_limit"]
    row = [c.c0, c.e_const, c.b_const, c.tail_bound, c.prime_limit]
    _emit_result(args, man, header, [row], payload)
    return 0


def _samples_csv(samples):
    header = ["x", "m1", "m2", "script_e"]
    rows = [[s.x, s.m1, s.m2, s.script_e] for s in samples]
    return header, rows


def _cmd_eval(args) -> int:
    t0 = time.perf_counter()
    constants = compute_constants(args.prime_limit)
    xs = _parse_grid(args.x)
    samples = evaluate_many(xs, constants, cache_dir=args.cache_dir)
    man = _manifest(args, "eval", constants_prime_limit=args.prime_limit)
    man.wall_time = time.perf_counter() - t0
    header, rows = _samples_csv(samples)
    payload = [
        {"x": s.x, "m1": s.m1, "m2": s.m2, "script_e": s.script_e, "script_e2": s.script_e2}
        for s in samples
    ]
    _emit_result(args, man, header, rows, payload)
    return 0


def _cmd_scan(args) -> int:
    t0 = time.perf_counter()
    constants = compute_constants(args.prime_limit)
    samples, changes = scan(
        args.x_min,
        args.x_max,
        args.points,
        constants,
        spacing=args.spacing,
        cache_dir=args.cache_dir,
    )
    man = _manifest(args, "scan", constants_prime_limit=args.prime_limit)
    man.wall_time = time.perf_counter() - t0
    header, rows = _samples_csv(samples)
    payload = {
        "sign_changes": changes,
        "samples": [
            {"x": s.x, "m1": s.m1, "m2": s.m2, "script_e": s.script_e} for s in samples
        ],
    }
    _emit_result(args, man, header, rows, payload)
    return 0


def _cmd_verify_positivity(args) -> int:
    t0 = time.perf_counter()
    constants = compute_constants(args.prime_limit)
    rep = verify_positivity(args.limit, constants, cache_dir=args.cache_dir)
    man = _manifest(args, "verify-positivity", constants_prime_limit=args.prime_limit)
    man.wall_time = time.perf_counter() - t0
    payload = {
        "limit": rep.limit,
        "verified": rep.verified,
        "min_m1": rep.min_m1,
        "argmin_m1": rep.argmin_m1,
        "min_m2": rep.min_m2,
        "argmin_m2": rep.argmin_m2,
        "intervals_checked": rep.intervals_checked,
    }
    header = list(payload.keys())
    _emit_result(args, man, header, [list(payload.values())], payload)
    return 0


def _cmd_logdensity(args) -> int:
    t0 = time.perf_counter()
    constants = compute_constants(args.prime_limit)
    rep = empirical_log_density(args.which, args.limit, constants, cache_dir=args.cache_dir)
    man = _manifest(args, "logdensity", constants_prime_limit=args.prime_limit)
    man.wall_time = time.perf_counter() - t0
    payload = {
        "which": rep.which,
        "upper_x": rep.upper_x,
        "lower_density": rep.lower_density,
        "upper_density": rep.upper_density,
    }
    header = list(payload.keys())
    _emit_result(args, man, header, [list(payload.values())], payload)
    return 0


def _cmd_zeros_validate(args) -> int:
    t0 = time.perf_counter()
    table = load_zeros(args.file)
    report = validate(table)
    identity = zero_sum_identity(table)
    man = _manifest(args, "zeros validate", zero_table_digest=table.source_digest)
    man.wall_time = time.perf_counter() - t0
    payload = {
        "count": report["count"],
        "max_height": report["max_height"],
        "counting_check": report["counting_check"],
        "min_gap": report["min_gap"],
        "digest": report["digest"],
        "counting_worst_ratio": report["counting_worst_ratio"],
        "strict_offset_deviation": report["strict_offset_deviation"],
        "assumes_critical_line": report["assumes_critical_line"],
        "zero_sum_partial": identity["partial"],
        "zero_sum_tail_estimate": identity["tail_estimate"],
        "zero_sum_target": identity["target"],
    }
    header = list(payload.keys())
    _emit_result(args, man, header, [list(payload.values())], payload)
    return 0


def _cmd_explicit(args) -> int:
    t0 = time.perf_counter()
    table = load_zeros(args.zeros)
    constants = compute_constants(args.prime_limit)
    xs = _parse_grid(args.x)
    Ts = []
    for tok in args.T.split(","):
        tok = tok.strip()
        Ts.append(table.max_height if tok == "max" else float(tok))
    samples = evaluate_many(xs, constants, cache_dir=args.cache_dir)
    rows = []
    for x, s in zip(xs, samples):
        sieve_val = s.script_e if args.which == "m1" else s.script_e2
        for T in Ts:
            ev = (
                explicit_script_e(x, T, table)
                if args.which == "m1"
                else explicit_m2(x, T, table, constants)
            )
            rows.append(
                [x, T, ev.value, sieve_val, abs(ev.value - sieve_val), ev.error_budget]
            )
    man = _manifest(
        args,
        "explicit",
        zero_table_digest=table.source_digest,
        constants_prime_limit=args.prime_limit,
    )
    man.wall_time = time.perf_counter() - t0
    header = ["x", "T", "explicit", "sieve", "residual", "budget"]
    payload = [dict(zip(header, r)) for r in rows]
    _emit_result(args, man, header, rows, payload)
    return 0


def _cmd_distribution(args) -> int:
    t0 = time.perf_counter()
    table = load_zeros(args.zeros) if args.zeros else None
    model = build_model(table, tail=args.tail, orientation=args.which)
    man = _manifest(
        args,
        "distribution",
        zero_table_digest=table.source_digest if table else None,
        seed=args.seed if args.montecarlo else None,
    )
    if args.prob_positive:
        value, details = prob_positive(model, step=args.step, return_details=True)
        man.wall_time = time.perf_counter() - t0
        payload = {
            "prob_positive": value,
            "complement": 1.0 - value,
            "t_max": details["t_max"],
            "nodes": details["nodes"],
            "convergence_estimate": details["convergence_estimate"],
            "theoretical_variance": theoretical_variance(model),
            "tail_variance": model.tail_variance,
            "zero_count": model.table.count,
        }
        header = list(payload.keys())
        _emit_result(args, man, header, [list(payload.values())], payload)
        return 0
    if args.density:
        a, b, n = args.density.split(":")
        z, f = density_grid(model, (float(a), float(b)), int(n), step=args.step)
        man.wall_time = time.perf_counter() - t0
        rows = [[float(zi), float(fi)] for zi, fi in zip(z, f)]
        payload = [{"z": r[0], "density": r[1]} for r in rows]
        _emit_result(args, man, ["z", "density"], rows, payload)
        return 0
    if args.montecarlo:
        res = sample_z(model, args.montecarlo, args.seed)
        man.wall_time = time.perf_counter() - t0
        payload = {
            "samples": res.samples,
            "seed": res.seed,
            "mean": res.mean,
            "variance": res.variance,
            "min_value": res.min_value,
            "negative_fraction": res.negative_fraction,
        }
        header = list(payload.keys())
        _emit_result(args, man, header, [list(payload.values())], payload)
        return 0
    raise ValueError("choose one of --prob-positive, --density, --montecarlo")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mertensbias",
        description="Mertens error terms, explicit formulas, and the bias distribution",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="write results to this file")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--cache-dir", default=None, help="sieve segment cache directory")
    common.add_argument(
        "--prime-limit",
        type=int,
        default=DEFAULT_PRIME_LIMIT,
        help="prime truncation for the Mertens constants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="Mertens constants E and B")
    p.set_defaults(func=_cmd_constants, default_format="json")

    p = sub.add_parser("eval", parents=[common], help="evaluate M1, M2 at points")
    p.add_argument("--x", required=True, help="value or log grid a:b:n")
    p.set_defaults(func=_cmd_eval, default_format="csv")

    p = sub.add_parser("scan", parents=[common], help="grid scan with sign changes")
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.set_defaults(func=_cmd_scan, default_format="csv")

    p = sub.add_parser(
        "verify-positivity", parents=[common], help="inter-prime positivity check"
    )
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=_cmd_verify_positivity, default_format="json")

    p = sub.add_parser(
        "logdensity", parents=[common], help="empirical logarithmic density"
    )
    p.add_argument("--which", choices=("w1", "w2"), required=True)
    p.add_argument("--limit", type=float, required=True)
    p.set_defaults(func=_cmd_logdensity, default_format="json")

    p = sub.add_parser("zeros", help="zero-table operations")
    zsub = p.add_subparsers(dest="zeros_command", required=True)
    pz = zsub.add_parser("validate", parents=[common], help="validate a zero table")
    pz.add_argument("--file", required=True)
    pz.set_defaults(func=_cmd_zeros_validate, default_format="json")

    p = sub.add_parser(
        "explicit", parents=[common], help="explicit formula vs sieve residuals"
    )
    p.add_argument("--x", required=True, help="value or log grid a:b:n")
    p.add_argument("--T", required=True, help="comma list of heights; 'max' allowed")
    p.add_argument("--zeros", required=True, help="zero-ordinate file")
    p.add_argument("--which", choices=("m1", "m2"), default="m1")
    p.set_defaults(func=_cmd_explicit, default_format="csv")

    p = sub.add_parser(
        "distribution", parents=[common], help="limiting distribution of the error"
    )
    p.add_argument("--zeros", default=None, help="zero-ordinate file")
    p.add_argument("--tail", choices=("auto", "none"), default="auto")
    p.add_argument("--which", choices=("m1", "m2"), default="m1")
    p.add_argument("--step", type=float, default=0.005, help="quadrature step")
    p.add_argument("--prob-positive", action="store_true")
    p.add_argument("--density", default=None, help="z grid a:b:n")
    p.add_argument("--montecarlo", type=int, default=None, help="sample count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_distribution, default_format="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    if args.threads is not None:
        try:
            import numba

            numba.set_num_threads(max(1, args.threads))
        except (ImportError, ValueError):
            pass
    try:
        return args.func(args)
    except (MertensBiasError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
