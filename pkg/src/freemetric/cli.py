"""Command-line interface: ``freemetric {len,dist,verify,sweep}``.

Exit codes: 0 success, 1 a hard verification check failed, 2 usage or
configuration error.
"""
from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .analysis import homogenize
from .config import get_limits, limits_from_env
from .errors import FreeMetricError
from .lengths import (
    LinearForm,
    SQRT2_FORM,
    Weights,
    cyc_length_fn,
    edit_distance,
    fg_distance,
    induced_distance,
    pullback_length_fn,
    wc_length,
    wc_length_fn,
    word_length_fn,
)
from .quasimorphisms import brooks
from .report import _fmt, table_to_csv
from .rotations import SWEEP_COLUMNS, make_local_length, so3_sweep
from .suites import SUITES, RunConfig, build_report
from .words import Alphabet, commutator, parse, parse_monoid, power, generators

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _alphabet(args) -> Alphabet:
    return Alphabet(args.rank)


def _weights(args, alphabet) -> Weights:
    return Weights.parse(args.weights or "", alphabet)


def _form(args, alphabet) -> LinearForm:
    if args.form:
        return LinearForm(tuple(float(t) for t in args.form.split(",")))
    if alphabet.rank == 2:
        return SQRT2_FORM
    # square roots of distinct primes are linearly independent over Q
    return LinearForm((1.0,) + tuple(math.sqrt(p) for p in _PRIMES[: alphabet.rank - 1]))


def length_fn_for(metric: str, args, alphabet):
    """Resolve a metric selector to a length function."""
    w = _weights(args, alphabet)
    if metric == "word":
        return word_length_fn(w)
    if metric == "cyc":
        return cyc_length_fn(w)
    if metric == "wc":
        return wc_length_fn(w)
    if metric == "pullback":
        return pullback_length_fn(_form(args, alphabet))
    if metric.startswith("so3:"):
        parts = metric.split(":")
        if len(parts) != 4:
            raise UsageError("so3 metric must look like so3:<R>:<eps|auto>:<seed>")
        _, R, eps, seed = parts
        return make_local_length(int(R), eps if eps.lower() == "auto" else float(eps), int(seed),
                                 rank=alphabet.rank)
    raise UsageError(f"unknown metric {metric!r}")


def cmd_len(args, out) -> int:
    alphabet = _alphabet(args)
    x = parse(args.word, alphabet)
    if args.metric.startswith("brooks:"):
        pattern = parse(args.metric.split(":", 1)[1], alphabet)
        if not pattern.codes:
            raise UsageError("brooks pattern must be non-empty")
        print(brooks(pattern, x), file=out)
        return EXIT_OK
    if args.metric == "wc" and args.witness:
        res = wc_length(x, _weights(args, alphabet))
        print(_fmt(res.deficiency), file=out)
        print("pairs: " + " ".join(f"({i},{j})" for i, j in res.pairs), file=out)
        return EXIT_OK
    print(_fmt(length_fn_for(args.metric, args, alphabet)(x)), file=out)
    return EXIT_OK


def cmd_dist(args, out) -> int:
    alphabet = _alphabet(args)
    w = _weights(args, alphabet)
    if args.metric == "edit":
        value = edit_distance(parse_monoid(args.u, alphabet), parse_monoid(args.v, alphabet), w)
    elif args.metric == "fg":
        value = fg_distance(parse(args.u, alphabet), parse(args.v, alphabet), w)
    else:
        ell = length_fn_for(args.metric, args, alphabet)
        value = induced_distance(ell, parse(args.u, alphabet), parse(args.v, alphabet))
    print(_fmt(value), file=out)
    return EXIT_OK


def _emit(text: str, path: str | None, out) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def _steps_to_n(steps: int) -> int:
    n = steps // 2
    if steps % 2 or n < 1 or n & (n - 1):
        raise UsageError(f"--n must be twice a power of two, got {steps}")
    return n


def cmd_verify(args, out) -> int:
    weights = _weights(args, _alphabet(args)).values if args.weights else (1.0, 5.0)
    kwargs = dict(rank=args.rank, weights=tuple(weights), seed=args.seed, limits=get_limits(),
                  exact=args.exact, trials=args.trials)
    if args.n is not None:
        key = "walk_exact_n" if args.exact else "walk_n"
        kwargs[key] = _steps_to_n(args.n)
    if args.so3_seeds is not None:
        kwargs["so3_seeds"] = args.so3_seeds
    try:
        cfg = RunConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = build_report(args.suite, cfg, jobs=args.jobs)
    text = {"json": report.to_json, "csv": report.to_csv, "text": report.to_text}[args.format]()
    _emit(text, args.out, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _parse_list(text: str, kind=float) -> list:
    text = (text or "").strip()
    if not text:
        raise UsageError("empty range")
    if ".." in text:
        lo, hi = text.split("..", 1)
        vals = list(range(int(lo), int(hi) + 1))
    else:
        vals = [kind(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise UsageError("empty range")
    return vals


def wc_defect_family(ks) -> list[tuple]:
    """``2 wc(z) - wc(z^2)`` along ``z = [a^k, b^k]`` and ``z = [a, b]^k``."""
    a, b = generators(Alphabet(2))
    ell = wc_length_fn()
    rows = []
    for k in ks:
        for family, z in (("[a^k,b^k]", commutator(power(a, k), power(b, k))),
                          ("[a,b]^k", power(commutator(a, b), k))):
            v1, v2 = ell(z), ell(power(z, 2))
            rows.append((k, family, str(z), v1, v2, 2 * v1 - v2))
    return rows


def cmd_sweep(args, out) -> int:
    if args.kind == "so3-ratio":
        eps = _parse_list(args.eps, float)
        if any(not (0 < e <= math.pi / 4) for e in eps):
            raise UsageError("epsilon values must lie in (0, pi/4]")
        seeds = _parse_list(args.seeds, int) if args.seeds else [args.seed]
        text = table_to_csv(SWEEP_COLUMNS, so3_sweep(eps, seeds, args.radius))
    elif args.kind == "wc-defect-family":
        ks = _parse_list(args.k, int)
        if any(k < 1 for k in ks):
            raise UsageError("k must be positive")
        text = table_to_csv(("k", "family", "z", "wc_z", "wc_z2", "defect"), wc_defect_family(ks))
    elif args.kind == "homogenize":
        alphabet = _alphabet(args)
        Ns = _parse_list(args.N, int)
        if any(N < 1 or N & (N - 1) for N in Ns):
            raise UsageError("N values must be powers of two")
        ell = length_fn_for(args.metric, args, alphabet)
        x = parse(args.word, alphabet)
        rows = []
        for N in Ns:
            h = homogenize(ell, x, N, args.c)
            rows.append((N, h.estimate, h.bracket[0], h.bracket[1]))
        text = table_to_csv(("N", "estimate", "lower", "upper"), rows)
    else:
        raise UsageError(f"unknown sweep kind {args.kind!r}")
    _emit(text, args.out, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="freemetric", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"freemetric {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--rank", type=int, default=2)
        sp.add_argument("--weights", default="", help="e.g. a=1,b=5")
        sp.add_argument("--form", default="", help="pullback coefficients, e.g. 1,1.414")

    sp = sub.add_parser("len", help="evaluate a length function")
    common(sp)
    sp.add_argument("--metric", required=True,
                    help="word | cyc | wc | pullback | brooks:<pattern> | so3:<R>:<eps>:<seed>")
    sp.add_argument("--word", required=True)
    sp.add_argument("--witness", action="store_true", help="print the optimal matching for wc")
    sp.set_defaults(func=cmd_len)

    sp = sub.add_parser("dist", help="distance between two words")
    common(sp)
    sp.add_argument("--metric", required=True, help="edit | fg | word | cyc | wc | pullback | so3:...")
    sp.add_argument("--u", required=True)
    sp.add_argument("--v", required=True)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--n", type=int, default=None, help="walk length 2n (twice a power of two)")
    sp.add_argument("--exact", action="store_true", help="exact enumeration for the walk suite")
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--so3-seeds", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1, help="run suites on this many threads")
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="parameter sweeps as CSV")
    common(sp)
    sp.add_argument("--kind", required=True, choices=("so3-ratio", "wc-defect-family", "homogenize"))
    sp.add_argument("--eps", default="0.2,0.1,0.05,0.02,0.01")
    sp.add_argument("--seeds", default="")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--k", default="1..6")
    sp.add_argument("--N", default="2,4,8,16,32,64,128,256")
    sp.add_argument("--metric", default="word")
    sp.add_argument("--word", default="baB")
    sp.add_argument("--c", type=float, default=2.0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        from . import config
        config.set_limits(limits_from_env())
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"freemetric: error: {exc}", file=err)
        return EXIT_USAGE
    except (FreeMetricError, ValueError) as exc:
        print(f"freemetric: error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
