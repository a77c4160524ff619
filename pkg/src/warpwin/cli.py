"""``warpwin`` command line: emits the data behind every comparison as CSV or JSON."""
import argparse
import json
import math
import sys

from . import sweeps
from .metrics import DEFAULT_N, DEFAULT_PAD, EstimationError
from .windows import Family, ParameterError, WindowSpec


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _tone(text):
    try:
        tf, amp = text.split(":")
        return float(tf), float(amp)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected TF:AMPLITUDE, got {text!r}") from None


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.9g" % value
    return str(value)


def write_csv(rows, fh):
    if not rows:
        return
    names = list(rows[0])
    for r in rows[1:]:
        names += [k for k in r if k not in names]
    fh.write(",".join(names) + "\n")
    for r in rows:
        fh.write(",".join(_fmt(r.get(k)) for k in names) + "\n")


def write_json(rows, fh):
    def clean(v):
        if isinstance(v, float):
            return float("%.9g" % v)
        return v
    json.dump([{k: clean(v) for k, v in r.items()} for r in rows], fh, indent=1)
    fh.write("\n")


def _spec_from(args):
    kw = {}
    for name in ("alpha", "warp", "tukey_fraction", "planck_epsilon"):
        v = getattr(args, name)
        if v is not None:
            kw[name] = v
    return WindowSpec(Family.parse(args.window), **kw)


def _add_window_args(p):
    p.add_argument("--window", required=True, help="window family, e.g. hann, hyperbolic, planck")
    p.add_argument("--alpha", type=float, help="exponent (hann, hyperbolic)")
    p.add_argument("--warp", type=float, help="warp factor s in (-1, 1) (hyperbolic)")
    p.add_argument("--tukey-fraction", dest="tukey_fraction", type=float, help="taper fraction r (tukey)")
    p.add_argument("--planck-epsilon", dest="planck_epsilon", type=float, help="taper parameter (planck)")


def _global_flags(suppress):
    # Subcommands accept the global flags too; SUPPRESS keeps their defaults
    # from overwriting values given before the subcommand name.
    def d(value):
        return argparse.SUPPRESS if suppress else value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=d(DEFAULT_N), help=f"samples per window (even, default {DEFAULT_N})")
    common.add_argument("--pad", type=int, default=d(DEFAULT_PAD), help=f"zero-pad factor (default {DEFAULT_PAD})")
    common.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    common.add_argument("--out", default=d(None), help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=d(1), help="worker processes for sweeps")
    return common


def build_parser():
    parser = argparse.ArgumentParser(prog="warpwin", description=__doc__, parents=[_global_flags(False)])
    common = _global_flags(True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", parents=[common], help="ENBW, sidelobe and roll-off of one window")
    _add_window_args(p)

    p = sub.add_parser("warp-curve", parents=[common], help="1/ENBW against warp for several alphas")
    p.add_argument("--alphas", type=_float_list, default=[1.0, 3.0, 10.0])
    p.add_argument("--points", type=int, default=sweeps.WARP_CURVE_POINTS)

    p = sub.add_parser("sidelobe-sweep", parents=[common], help="sidelobe height against ENBW")
    p.add_argument("--points", type=int, default=sweeps.DEFAULT_POINTS)
    p.add_argument("--alphas", type=_float_list, default=list(sweeps.SIDELOBE_ALPHAS))

    p = sub.add_parser("rolloff-sweep", parents=[common], help="roll-off against ENBW and against alpha")
    p.add_argument("--points", type=int, default=sweeps.DEFAULT_POINTS)
    p.add_argument("--alpha", type=float, default=sweeps.ROLLOFF_ALPHA)

    p = sub.add_parser("spectrum", parents=[common], help="power spectrum of one window")
    _add_window_args(p)
    p.add_argument("--decompose", action="store_true", help="add smooth and residual columns")
    p.add_argument("--tone", type=_tone, help="add a tone TF:AMPLITUDE relative to the peak")
    p.add_argument("--fmax", type=float, help="highest Tf to emit")

    p = sub.add_parser("crossover", parents=[common], help="Planck/hyperbolic crossover Tf against ENBW")
    p.add_argument("--alphas", type=_float_list, default=list(sweeps.CROSSOVER_ALPHAS))
    p.add_argument("--points", type=int, default=sweeps.DEFAULT_POINTS)
    return parser


def run(args):
    if args.n % 2 or args.n < 4:
        raise ParameterError("n", f"must be an even integer >= 4, got {args.n}")
    if args.pad < 1:
        raise ParameterError("pad", f"must be >= 1, got {args.pad}")
    if args.jobs < 1:
        raise ParameterError("jobs", f"must be >= 1, got {args.jobs}")
    if getattr(args, "points", 2) < 2:
        raise ParameterError("points", f"must be >= 2, got {args.points}")
    n, pad, jobs = args.n, args.pad, args.jobs
    cmd = args.command
    if cmd == "metrics":
        return [sweeps.metrics_record(_spec_from(args), n, pad)]
    if cmd == "warp-curve":
        return sweeps.warp_curve(args.alphas, n, args.points, jobs)
    if cmd == "sidelobe-sweep":
        return sweeps.sidelobe_sweep(n, pad, args.points, jobs, args.alphas)
    if cmd == "rolloff-sweep":
        return sweeps.rolloff_sweep(n, pad, args.points, jobs, args.alpha)
    if cmd == "spectrum":
        return sweeps.spectrum_records(_spec_from(args), n, pad, args.decompose, args.tone, args.fmax)
    if cmd == "crossover":
        return sweeps.crossover_sweep(args.alphas, n, pad, args.points, jobs)
    raise ParameterError("command", f"unknown command {cmd!r}")  # pragma: no cover


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        rows = run(args)
    except (ParameterError, EstimationError) as exc:
        print(f"warpwin: error: {exc}", file=sys.stderr)
        return 2
    for r in rows:
        for k, v in r.items():
            if isinstance(v, float) and not math.isfinite(v):
                print(f"warpwin: error: {k}: non-finite value in output", file=sys.stderr)
                return 3
    writer = write_json if args.format == "json" else write_csv
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer(rows, fh)
    else:
        writer(rows, sys.stdout)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
