"""``chainkit`` command line.

Exit codes: 0 success (or "is a c-chain"), 1 verified false, 2 usage or
I/O error. Machine output goes to stdout, diagnostics to stderr.
"""

import argparse
import json
import sys
import time

from . import bench, chainfile, report, svg
from .chain import is_c_chain_bruteforce
from .exceptions import ChainkitError
from .fractal import MAX_DEPTH, FractalParams, Variant, generate
from .range_search import BACKENDS
from .recognition import CChainRecognizer
from .validation import check_threshold

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(ChainkitError):
    pass


def _dump(obj, stream=None):
    print(json.dumps(obj, allow_nan=False), file=stream or sys.stdout)


def cmd_generate(args):
    params = FractalParams(args.c, args.k, args.a, Variant(args.variant))
    chain, rep = generate(params)
    fmt = chainfile.infer_format(args.out or "", args.format)
    if args.out:
        chainfile.write_chain(chain, args.out, fmt)
        _dump(rep.to_dict())
    else:
        # keep stdout a valid chain file
        sys.stdout.write(chainfile.dumps(chain, fmt))
        _dump(rep.to_dict(), sys.stderr)
    return EXIT_OK


def cmd_verify(args):
    c = check_threshold(args.c)
    P = chainfile.read_chain(args.path, args.format)
    if args.method == "brute":
        ok, witness = is_c_chain_bruteforce(P, c)
    else:
        out = CChainRecognizer(backend=args.backend).fit(P).decide(c)
        ok, witness = out.is_c_chain, out.witness
    if ok:
        print("ok")
        return EXIT_OK
    print(witness)
    return EXIT_FALSE


def cmd_minc(args):
    P = chainfile.read_chain(args.path, args.format)
    t = time.perf_counter()
    res = report.compute_min_c(P, args.method, rel_tol=args.rel_tol, backend=args.backend)
    doc = report.minc_dict(res)
    doc["elapsed_s"] = time.perf_counter() - t
    _dump(doc)
    return EXIT_OK


def cmd_analyze(args):
    P = chainfile.read_chain(args.path, args.format)
    _dump(report.analyze(P, args.method, args.backend, timing=not args.no_timing))
    return EXIT_OK


def _parse_ellipse(values, n):
    if len(values) != 3:
        raise UsageError("--ellipse takes I K C")
    i_s, k_s, c_s = values
    try:
        i = n if i_s == "n" else int(i_s)
        k = n if k_s == "n" else int(k_s)
        c = float(c_s)
    except ValueError as exc:
        raise UsageError(f"bad --ellipse value: {exc}") from exc
    if not 1 <= i < k <= n:
        raise UsageError(f"--ellipse needs 1 <= I < K <= {n}, got {i} {k}")
    return i, k, check_threshold(c)


def cmd_plot(args):
    P = chainfile.read_chain(args.path, args.format)
    overlay = args.overlay
    if args.ellipse and overlay == "none":
        overlay = "ellipse"
    ellipse = None
    if overlay == "ellipse":
        if not args.ellipse:
            raise UsageError("--overlay ellipse needs --ellipse I K C")
        ellipse = _parse_ellipse(args.ellipse, P.n)
    try:
        svg.write_svg(P, args.out, overlay=overlay, ellipse=ellipse)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from exc
    return EXIT_OK


def _sizes(text):
    try:
        sizes = [int(s) for s in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc
    if not sizes or min(sizes) < 3 or max(sizes) > 4 ** 6 + 1:
        raise argparse.ArgumentTypeError(f"sizes must lie in [3, {4 ** 6 + 1}]")
    return sizes


def cmd_bench(args):
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    sizes = [s for group in args.sizes for s in group]
    rows = bench.run(sizes, args.backends, args.trials, args.seed, args.c, args.brute)
    sys.stdout.write(bench.to_csv(rows))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="chainkit", description="Tools for c-chains.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build a fractal chain P^k")
    g.add_argument("--c", type=float, required=True)
    g.add_argument("--k", type=int, required=True, help=f"depth, 0..{MAX_DEPTH}")
    g.add_argument("--variant", choices=[v.value for v in Variant], default="standard")
    g.add_argument("--a", type=float, default=None, help="apex parameter override")
    g.add_argument("--out", help="output path; stdout when omitted")
    g.add_argument("--format", choices=chainfile.FORMATS, default=None)
    g.set_defaults(func=cmd_generate)

    def chain_arg(sp):
        sp.add_argument("path", help="chain file (.json or .csv)")
        sp.add_argument("--format", choices=chainfile.FORMATS, default=None)

    v = sub.add_parser("verify", help="is the chain a c-chain?")
    chain_arg(v)
    v.add_argument("--c", type=float, required=True)
    v.add_argument("--method", choices=("brute", "fast"), default="fast")
    v.add_argument("--backend", choices=BACKENDS, default="grid")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("minc", help="minimum c for which the chain is a c-chain")
    chain_arg(m)
    m.add_argument("--method", choices=("auto", "brute", "bisect"), default="brute")
    m.add_argument("--rel-tol", type=float, default=1e-9)
    m.add_argument("--backend", choices=BACKENDS, default="grid")
    m.set_defaults(func=cmd_minc)

    a = sub.add_parser("analyze", help="JSON report on one chain")
    chain_arg(a)
    a.add_argument("--method", choices=("auto", "brute", "bisect"), default="auto")
    a.add_argument("--backend", choices=BACKENDS, default="grid")
    a.add_argument("--no-timing", action="store_true", help="omit timings for reproducible output")
    a.set_defaults(func=cmd_analyze)

    pl = sub.add_parser("plot", help="draw the chain as SVG")
    chain_arg(pl)
    pl.add_argument("out", help="output .svg path")
    pl.add_argument("--overlay", choices=("none", "hull", "ellipse"), default="none")
    pl.add_argument("--ellipse", nargs=3, metavar=("I", "K", "C"),
                    help="focal ellipse on vertices I and K (K may be 'n')")
    pl.set_defaults(func=cmd_plot)

    b = sub.add_parser("bench", help="time both range-search backends")
    b.add_argument("--sizes", type=_sizes, nargs="+", default=[[65, 257, 1025]],
                   help="vertex counts, space or comma separated")
    b.add_argument("--backends", nargs="+", choices=BACKENDS, default=list(BACKENDS))
    b.add_argument("--trials", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--c", type=float, default=6.0, help="fractal parameter and threshold")
    b.add_argument("--brute", action="store_true", help="also time brute-force min-c")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ChainkitError, ValueError, OSError) as exc:
        print(f"chainkit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
