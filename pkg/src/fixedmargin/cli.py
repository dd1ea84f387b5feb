"""Command-line interface: ``fixedmargin <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 parse or I/O error, 4 internal
invariant violation (a null whose margins differ from the input).
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from . import labkit
from ._validation import check_seed
from .exceptions import (EnumerationOverflowError, MarginViolationError,
                         MatrixFormatError, NoSwapPossibleError)
from .matcore import (FORMATS, fill_ratio, format_matrix, guess_format,
                      margins, read_matrix, write_matrix)
from .metrics import GREATER, LESS, empirical_p, total_checkerboards
from .swapper import (ATTEMPTED, COUNT_MODES, SwapConfig, independent_swap,
                      recommended_swap_count, sequential_swap_ensemble)
from .trader import (TRADE_MODES, UNIFORM, RandomizerConfig, batch_randomize,
                     default_extraction_count, mix_seed)

EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_INVARIANT = 4

EXTENSIONS = {"dense": "txt", "csv": "csv", "sparse": "sparse"}


class UsageError(Exception):
    pass


def _fmt_list(values):
    return "[" + ", ".join(str(v) for v in values) + "]"


def _load(args):
    fmt = args.format or guess_format(args.input)
    return read_matrix(args.input, fmt), fmt


def _write_metadata(path, items):
    with open(path, "w") as fh:
        for key, value in items:
            fh.write(f"{key} = {value}\n")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _fill_arg(text):
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"fill must lie in [0, 1], got {text}")
    return value


def _size_arg(text):
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"size must look like ROWSxCOLS, got {text!r}") from None
    if rows < 1 or cols < 1:
        raise argparse.ArgumentTypeError("size must be positive")
    return rows, cols


def _fills_arg(text):
    return [_fill_arg(v) for v in text.split(",") if v.strip()]


# -- subcommands -------------------------------------------------------------

def cmd_randomize(args, out):
    m, fmt = _load(args)
    out_fmt = args.out_format or fmt
    seed = check_seed(args.seed)
    meta = [("input", args.input), ("seed", seed),
            ("algorithm", args.algorithm), ("nulls", args.k)]

    if args.algorithm == "trade":
        n_ext = args.extractions or default_extraction_count(m)
        cfg = RandomizerConfig(n_ext, args.mode, seed)
        nulls = batch_randomize(m, args.k, cfg, n_jobs=args.threads)
        meta += [("extractions", n_ext), ("trade_count_mode", args.mode)]
        print(f"extractions: {n_ext}", file=out)
    else:
        n_swaps = args.swaps if args.swaps is not None \
            else recommended_swap_count(m)
        cfg = SwapConfig(args.burn_in, n_swaps, args.count_mode, seed)
        if args.algorithm == "seqswap":
            nulls = sequential_swap_ensemble(m, args.k, cfg)
            meta += [("burn_in_attempts", args.burn_in)]
        else:
            nulls = [independent_swap(m, SwapConfig(
                cfg.burn_in_attempts, n_swaps, cfg.count_mode,
                mix_seed(seed, i))) for i in range(args.k)]
            meta += [("swaps", n_swaps), ("count_mode", args.count_mode)]
        print(f"swaps: {n_swaps}", file=out)

    mg = margins(m)
    for null in nulls:
        if margins(null) != mg:
            raise MarginViolationError("null matrix margins differ from input")
    meta += [("row_totals", _fmt_list(mg.row_totals)),
             ("col_totals", _fmt_list(mg.col_totals))]

    print(f"seed: {seed}", file=out)
    if args.stream:
        for k, null in enumerate(nulls):
            if k:
                out.write("\n")
            out.write(format_matrix(null, out_fmt))
        return 0
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    ext = EXTENSIONS[out_fmt]
    for k, null in enumerate(nulls):
        write_matrix(null, outdir / f"null_{k:05d}.{ext}", out_fmt)
    _write_metadata(outdir / "metadata.txt", meta)
    print(f"wrote {len(nulls)} nulls to {outdir}", file=out)
    return 0


def cmd_stats(args, out):
    m, _ = _load(args)
    mg = margins(m)
    print(f"dimensions: {m.shape[0]}x{m.shape[1]}", file=out)
    print(f"fill: {fill_ratio(m):.4f}", file=out)
    print(f"row_totals: {_fmt_list(mg.row_totals)}", file=out)
    print(f"col_totals: {_fmt_list(mg.col_totals)}", file=out)
    print(f"checkerboards: {total_checkerboards(m)}", file=out)
    return 0


def cmd_significance(args, out):
    m, _ = _load(args)
    seed = check_seed(args.seed)
    n_ext = args.extractions or default_extraction_count(m)
    cfg = RandomizerConfig(n_ext, args.mode, seed)
    observed = total_checkerboards(m)
    values = np.array([total_checkerboards(x) for x in
                       batch_randomize(m, args.k, cfg, n_jobs=args.threads)],
                      dtype=float)
    sd = values.std(ddof=1) if values.size > 1 else 0.0
    print(f"seed: {seed}", file=out)
    print(f"extractions: {n_ext}", file=out)
    print(f"nulls: {args.k}", file=out)
    print(f"observed_checkerboards: {observed}", file=out)
    print(f"null_mean: {values.mean():.4f}", file=out)
    print(f"null_sd: {sd:.4f}", file=out)
    print(f"p_greater: {empirical_p(observed, values, GREATER):.6g}", file=out)
    print(f"p_less: {empirical_p(observed, values, LESS):.6g}", file=out)
    return 0


def cmd_uniformity(args, out):
    m, _ = _load(args)
    seed = check_seed(args.seed)
    print(f"seed: {seed}", file=out)
    print(f"extractions: {args.extractions}", file=out)
    p_values = []
    for rep in range(args.reps):
        rep_seed = seed if args.reps == 1 else mix_seed(seed, rep)
        cfg = RandomizerConfig(args.extractions, args.mode, rep_seed)
        try:
            census, result = labkit.uniformity_experiment(
                m, args.k, cfg, limit=args.limit, n_jobs=args.threads,
                warn=False)
        except EnumerationOverflowError as exc:
            raise UsageError(
                f"{exc}; try a smaller matrix or raise --limit") from None
        if rep == 0:
            print(f"configurations: {census.total_configs}", file=out)
            if census.expected_per_config < 5:
                print(f"warning: expected count per configuration is "
                      f"{census.expected_per_config:.3g} (< 5)", file=out)
            if args.reps == 1:
                for idx, count in enumerate(census.counts):
                    print(f"config {idx}: {count}", file=out)
        flag = " (degenerate)" if result.degenerate else ""
        print(f"rep {rep}: chi2={result.statistic:.4f} df={result.df} "
              f"p={result.p_value:.6f}{flag}", file=out)
        p_values.append(result.p_value)
    print(f"mean_p: {float(np.mean(p_values)):.6f}", file=out)
    return 0


def _bench_matrices(args):
    if args.input:
        m, _ = _load(args)
        return [("input", m)]
    rows, cols = args.size
    fills = args.fills or [args.fill]
    seed = check_seed(args.seed)
    return [(f"fill{f:g}", labkit.gen_random_fill(rows, cols, f,
                                                   mix_seed(seed, k)))
            for k, f in enumerate(fills)]


def cmd_benchmark(args, out):
    seed = check_seed(args.seed)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if args.experiment == "convergence":
        if not args.input:
            raise UsageError("benchmark convergence needs -i/--input")
        m, _ = _load(args)
        schedule = labkit.arithmetic_schedule(args.start, args.stop, args.step)
        series = labkit.convergence_experiment(
            m, args.set_size, schedule, seed=seed, mode=args.mode,
            n_jobs=args.threads)
        path = outdir / "convergence.csv"
        path.write_text(series.to_csv())
        written.append(path)
        stable = labkit.stability_detect(series, min(args.window, len(series)),
                                         args.rel_tol)
        print(f"stable_at: {stable if stable is not None else 'none'}",
              file=out)
    else:
        for name, m in _bench_matrices(args):
            for k, algo in enumerate(args.algorithms):
                rng = np.random.default_rng(mix_seed(seed, k))
                max_ops = args.trade_ops if algo == "trade" else args.swap_ops
                stride = args.trade_stride if algo == "trade" \
                    else args.swap_stride
                if args.experiment == "perturbation":
                    series = labkit.perturbation_curve(m, algo, max_ops,
                                                       stride, rng, args.mode)
                elif args.experiment == "timing":
                    series = labkit.timing_curve(m, algo, max_ops, stride,
                                                 rng, args.mode)
                else:
                    series = labkit.success_rate_curve(m, algo, args.attempts,
                                                       rng, mode=args.mode)
                path = outdir / f"{args.experiment}_{algo}_{name}.csv"
                path.write_text(series.to_csv())
                written.append(path)
    _write_metadata(outdir / "metadata.txt",
                    [("experiment", args.experiment), ("seed", seed)])
    print(f"seed: {seed}", file=out)
    for path in written:
        print(f"wrote {path}", file=out)
    return 0


def cmd_generate(args, out):
    seed = check_seed(args.seed)
    rng = np.random.default_rng(seed)
    if args.kind == "lowcb":
        m, k = labkit.gen_low_checkerboard(rng)
        info = f"target_checkerboards: {k}"
    else:
        m = labkit.gen_random_fill(args.rows, args.cols, args.fill, rng)
        info = None
    text = format_matrix(m, args.format)
    if args.output:
        Path(args.output).write_text(text)
        print(f"seed: {seed}", file=out)
        if info:
            print(info, file=out)
        print(f"checkerboards: {total_checkerboards(m)}", file=out)
    else:
        out.write(text)
    return 0


# -- parser --------------------------------------------------------------------

def _add_input(p, required=True):
    p.add_argument("-i", "--input", required=required, help="matrix file")
    p.add_argument("--format", choices=FORMATS,
                   help="input format (default: guessed from the suffix)")


def _add_seed(p):
    p.add_argument("--seed", type=_non_negative, default=None,
                   help="base seed (default: fresh entropy, echoed)")


def _add_trade(p, extractions_default=None):
    p.add_argument("--extractions", type=_positive,
                   default=extractions_default,
                   help="pair extractions per null")
    p.add_argument("--mode", choices=TRADE_MODES, default=UNIFORM,
                   help="trade-count distribution")
    p.add_argument("--threads", type=_positive, default=1,
                   help="worker threads; output does not depend on it")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fixedmargin",
        description="Fixed-margin randomization of presence-absence matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("randomize", help="write null matrices")
    _add_input(p)
    _add_seed(p)
    _add_trade(p)
    p.add_argument("-k", type=_positive, default=1, help="number of nulls")
    p.add_argument("--algorithm", choices=("trade", "indswap", "seqswap"),
                   default="trade")
    p.add_argument("--swaps", type=_non_negative,
                   help="swaps per independent-swap null "
                        "(default: recommended count)")
    p.add_argument("--burn-in", type=_non_negative, default=30000,
                   help="attempted swaps before the first sequential null")
    p.add_argument("--count-mode", choices=COUNT_MODES, default=ATTEMPTED)
    p.add_argument("-o", "--output", default="nulls", help="output directory")
    p.add_argument("--out-format", choices=FORMATS)
    p.add_argument("--stream", action="store_true",
                   help="write all nulls to stdout, blank-line separated")
    p.set_defaults(func=cmd_randomize)

    p = sub.add_parser("stats", help="dimensions, fill, margins, checkerboards")
    _add_input(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("significance",
                       help="checkerboard total against trade nulls")
    _add_input(p)
    _add_seed(p)
    _add_trade(p)
    p.add_argument("-k", type=_positive, default=999, help="number of nulls")
    p.set_defaults(func=cmd_significance)

    p = sub.add_parser("uniformity",
                       help="chi-square census over all configurations")
    _add_input(p)
    _add_seed(p)
    _add_trade(p, extractions_default=1000)
    p.add_argument("-k", type=_positive, default=1000, help="nulls per rep")
    p.add_argument("--reps", type=_positive, default=1)
    p.add_argument("--limit", type=_positive, default=labkit.DEFAULT_LIMIT,
                   help="maximum number of configurations to enumerate")
    p.set_defaults(func=cmd_uniformity)

    p = sub.add_parser("benchmark", help="experiment series as CSV")
    p.add_argument("experiment",
                   choices=("convergence", "perturbation", "success", "timing"))
    _add_input(p, required=False)
    _add_seed(p)
    _add_trade(p)
    p.add_argument("-o", "--output", default="bench", help="output directory")
    p.add_argument("--size", type=_size_arg, default=(100, 100))
    p.add_argument("--fill", type=_fill_arg, default=0.5)
    p.add_argument("--fills", type=_fills_arg)
    p.add_argument("--algorithms", type=lambda s: s.split(","),
                   default=["trade", "swap"])
    p.add_argument("--trade-ops", type=_positive, default=2000)
    p.add_argument("--trade-stride", type=_positive, default=10)
    p.add_argument("--swap-ops", type=_positive, default=200000)
    p.add_argument("--swap-stride", type=_positive, default=500)
    p.add_argument("--attempts", type=_positive, default=10**6)
    p.add_argument("--from", dest="start", type=_non_negative, default=0)
    p.add_argument("--to", dest="stop", type=_non_negative, default=10000)
    p.add_argument("--step", type=_positive, default=100)
    p.add_argument("--set-size", type=_positive, default=1000)
    p.add_argument("--window", type=_positive, default=100)
    p.add_argument("--rel-tol", type=float, default=0.01)
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("gen", help="generate a test matrix")
    p.add_argument("kind", choices=("lowcb", "fill"))
    _add_seed(p)
    p.add_argument("--rows", type=_positive, default=100)
    p.add_argument("--cols", type=_positive, default=100)
    p.add_argument("--fill", type=_fill_arg, default=0.5)
    p.add_argument("--format", choices=FORMATS, default="dense")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "algorithms", None):
        bad = [a for a in args.algorithms if a not in labkit.ALGORITHMS]
        if bad:
            parser.error(f"unknown algorithm(s): {', '.join(bad)}")
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MarginViolationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (NoSwapPossibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
