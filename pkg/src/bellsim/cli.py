"""Command-line front end.

Subcommands: sweep, chsh, dist-check, bell-datasets, demo-noncommute.
Angles are degrees by default ('rad' suffix for radians); sweeps accept
'start:stop:count' ranges. Numeric output is fixed at 9 significant
digits so repeated runs are byte-identical.

Exit codes: 0 success, 1 internal error, 2 usage/validation,
3 acceptance-threshold failure (dist-check only).
"""

import argparse
import csv
import io
import json
import math
import secrets
import sys

import numpy as np

from bellsim import inequality, oracle
from bellsim.montecarlo import SimConfig, sweep_angles, chsh_experiment, ConfigError
from bellsim.photon_stats import bose_einstein_pmf, sample_count_marginal_block
from bellsim.polarizer import sequential_polarizers
from bellsim.rng import block_generator

DEFAULT_SEED = 0x5EEDB311

_MODE_MAP = {
    "intensity": "intensity_only",
    "poisson": "independent_poisson",
    "matched": "matched_pairs",
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    return format(float(x), ".9g")


def _json_num(x) -> float:
    return float(fmt(x))


def parse_angle(token: str) -> float:
    """Single angle in radians; degrees unless suffixed with 'rad'."""
    token = token.strip()
    if not token:
        raise UsageError("empty angle token")
    if token.endswith("rad"):
        try:
            return float(token[:-3])
        except ValueError:
            raise UsageError(f"bad angle {token!r}") from None
    if token.endswith("deg"):
        token = token[:-3]
    try:
        return math.radians(float(token))
    except ValueError:
        raise UsageError(f"bad angle {token!r}") from None


def parse_angle_list(spec: str):
    """Comma list of angles, or 'start:stop:count' range (unit suffix last)."""
    spec = spec.strip()
    if not spec:
        raise UsageError("empty angle list")
    if ":" in spec:
        unit = "deg"
        if spec.endswith("rad") or spec.endswith("deg"):
            unit, spec = spec[-3:], spec[:-3]
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError("range syntax is start:stop:count")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError("range syntax is start:stop:count") from None
        if count < 1:
            raise UsageError("range count must be >= 1")
        values = [start] if count == 1 else [
            start + i * (stop - start) / (count - 1) for i in range(count)
        ]
        if unit == "deg":
            values = [math.radians(v) for v in values]
        return values
    return [parse_angle(t) for t in spec.split(",")]


def parse_seed(value: str) -> int:
    if value == "random":
        return secrets.randbits(64)
    try:
        seed = int(value, 0)
    except ValueError:
        raise UsageError(f"bad seed {value!r}") from None
    if not 0 <= seed < 1 << 64:
        raise UsageError("seed must fit in 64 bits")
    return seed


def _emit(args, config_dict, header, rows, summary):
    if args.format == "json":
        payload = {"config": config_dict, "rows": [dict(zip(header, r)) for r in rows],
                   "summary": summary}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow([fmt(v) if isinstance(v, float) else v for v in r])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p):
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--mean-intensity", type=float, default=1.0)
    p.add_argument("--seed", type=str, default=str(DEFAULT_SEED))
    p.add_argument("--mode", choices=sorted(_MODE_MAP), default="poisson")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def cmd_sweep(args) -> int:
    deltas = parse_angle_list(args.deltas)
    config = SimConfig(
        trials=args.trials,
        mean_intensity=args.mean_intensity,
        seed=parse_seed(args.seed),
        count_mode=_MODE_MAP[args.mode],
    )
    rows_out = []
    for row in sweep_angles(config, deltas, threads=args.threads):
        rows_out.append(
            (
                _json_num(row.delta),
                _json_num(row.estimate),
                _json_num(row.std_error),
                _json_num(row.oracle),
                _json_num(abs(row.estimate - row.oracle)),
            )
        )
    header = ("delta_radians", "estimate", "std_error", "oracle", "abs_deviation")
    summary = {
        "max_abs_deviation": _json_num(max(r[4] for r in rows_out)),
        "rows": len(rows_out),
    }
    _emit(args, _config_dict(config), header, rows_out, summary)
    return 0


def _config_dict(config: SimConfig):
    return {
        "trials": config.trials,
        "mean_intensity": _json_num(config.mean_intensity),
        "seed": config.seed,
        "count_mode": config.count_mode,
    }


def cmd_chsh(args) -> int:
    angles = [parse_angle(t) for t in args.angles.split(",")] if args.angles else []
    if len(angles) != 4:
        raise UsageError("--angles needs exactly four comma-separated values")
    a, a_prime, b, b_prime = angles
    config = SimConfig(
        trials=args.trials,
        mean_intensity=args.mean_intensity,
        seed=parse_seed(args.seed),
        count_mode=_MODE_MAP[args.mode],
    )
    s, se = chsh_experiment(config, a, a_prime, b, b_prime, threads=args.threads)
    s_oracle = oracle.chsh_value(a, a_prime, b, b_prime)
    header = ("s_estimate", "std_error", "s_oracle", "abs_deviation")
    rows = [(_json_num(s), _json_num(se), _json_num(s_oracle), _json_num(abs(s - s_oracle)))]
    summary = {"s_estimate": _json_num(s), "std_error": _json_num(se),
               "s_oracle": _json_num(s_oracle)}
    _emit(args, _config_dict(config), header, rows, summary)
    return 0


def cmd_dist_check(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if not args.mean_intensity > 0:
        raise UsageError("--mean-intensity must be positive")
    mean = args.mean_intensity
    rng = block_generator(parse_seed(args.seed), 0)
    counts = sample_count_marginal_block(mean, rng, args.samples)

    # Truncate where the analytic tail mass drops below 1e-9.
    q = mean / (mean + 1.0)
    n_max = max(1, math.ceil(math.log(1e-9) / math.log(q)))
    analytic = np.array([bose_einstein_pmf(n, mean) for n in range(n_max + 1)])
    hist = np.bincount(np.minimum(counts, n_max + 1), minlength=n_max + 2)
    empirical = hist / args.samples
    tail_analytic = max(1.0 - analytic.sum(), 0.0)
    tv = 0.5 * (np.abs(empirical[: n_max + 1] - analytic).sum()
                + abs(empirical[n_max + 1] - tail_analytic))

    header = ("n", "empirical", "analytic")
    rows = [(int(n), _json_num(empirical[n]), _json_num(analytic[n]))
            for n in range(n_max + 1)]
    summary = {
        "samples": args.samples,
        "mean_intensity": _json_num(mean),
        "empirical_mean": _json_num(counts.mean()),
        "total_variation": _json_num(tv),
        "threshold": _json_num(args.threshold),
        "passed": bool(tv < args.threshold),
    }
    config_dict = {"samples": args.samples, "mean_intensity": _json_num(mean),
                   "seed": parse_seed(args.seed)}
    _emit(args, config_dict, header, rows, summary)
    return 0 if tv < args.threshold else 3


def cmd_bell_datasets(args) -> int:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        try:
            seqs = inequality.parse_sequences(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.random:
        if args.random not in (3, 4):
            raise UsageError("--random must be 3 or 4 sequences")
        if args.len < 1:
            raise UsageError("--len must be >= 1")
        rng = block_generator(parse_seed(args.seed), 0)
        seqs = [
            inequality.SignSequence(2 * rng.integers(0, 2, size=args.len) - 1)
            for _ in range(args.random)
        ]
    else:
        raise UsageError("provide --file or --random N --len L")

    if len(seqs) == 3:
        report = inequality.bell_three_check(*seqs)
        name = "bell_three"
    elif len(seqs) == 4:
        report = inequality.chsh_four_check(*seqs)
        name = "chsh_four"
    else:
        raise UsageError("need exactly 3 or 4 sequences")

    print(f"inequality: {name}")
    print(f"lhs: {report.lhs} ({fmt(report.lhs)})")
    print(f"bound: {report.bound} ({fmt(report.bound)})")
    print(f"margin: {report.margin} ({fmt(report.margin)})")
    print(f"satisfied: {report.satisfied}")
    return 0 if report.satisfied else 1


def cmd_demo_noncommute(args) -> int:
    angles = parse_angle_list(args.angles) if args.angles.strip() else []
    input_pol = parse_angle(args.input_pol)
    forward = sequential_polarizers(input_pol, args.intensity, angles)
    if angles:
        reverse = sequential_polarizers(input_pol, args.intensity, list(reversed(angles)))
        print(f"order {args.angles}: transmitted {fmt(forward)}")
        print(f"reversed order: transmitted {fmt(reverse)}")
    else:
        print(f"no polarizers: transmitted {fmt(forward)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellsim",
        description="Monte Carlo Bell-correlation simulator for chaotic-light statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="normalized correlation vs angle difference")
    _add_common(p)
    p.add_argument("--deltas", type=str, required=True,
                   help="comma list or start:stop:count range, e.g. 0:90:13deg")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("chsh", help="CHSH S from four angle-pair runs")
    _add_common(p)
    p.add_argument("--angles", type=str, default="0,45,22.5,67.5",
                   help="a,a',b,b' (degrees unless 'rad' suffix)")
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("dist-check", help="Bose-Einstein marginal goodness of fit")
    p.add_argument("--mean-intensity", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--threshold", type=float, default=0.005)
    p.add_argument("--seed", type=str, default=str(DEFAULT_SEED))
    p.add_argument("--output", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_dist_check)

    p = sub.add_parser("bell-datasets", help="exact inequality check on +/-1 data")
    p.add_argument("--file", type=str, default=None)
    p.add_argument("--random", type=int, default=None,
                   help="generate this many random sequences (3 or 4)")
    p.add_argument("--len", type=int, default=1000)
    p.add_argument("--seed", type=str, default=str(DEFAULT_SEED))
    p.set_defaults(func=cmd_bell_datasets)

    p = sub.add_parser("demo-noncommute", help="sequential-polarizer order demo")
    p.add_argument("--angles", type=str, default="45,90")
    p.add_argument("--input-pol", type=str, default="0")
    p.add_argument("--intensity", type=float, default=1.0)
    p.set_defaults(func=cmd_demo_noncommute)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
