"""Command line: gen | allocate | ratio | verify.

Exit codes: 0 ok, 1 parse error, 2 validation error, 3 property violation,
4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .core import ValidationError
from .drf import ALGORITHMS, InternalInconsistency, run
from .fileio import ParseError, RenormalizedWarning, format_instance, format_report, parse_rational, read_instance, write_text
from .generators import BadParams, gen_random, gen_theorem1, gen_theorem2
from .lp import LPError
from .ratios import PropertyViolation, ratio_report, verify_run

log = logging.getLogger("dyndrf")

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_PROPERTY, EXIT_INTERNAL = range(5)


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _figure_path(args) -> Path | None:
    if args.figure:
        return Path(args.figure)
    if args.out and not args.no_figure:
        return Path(args.out).with_suffix(".png")
    return None


def cmd_gen(args) -> int:
    if args.family == "t1":
        if args.m is None or args.n is None or args.eps is None:
            raise BadParams("t1 needs --m, --n and --eps")
        inst = gen_theorem1(args.m, args.n, parse_rational(args.eps))
    elif args.family == "t2":
        if args.m is None or args.eps is None:
            raise BadParams("t2 needs --m and --eps")
        inst = gen_theorem2(args.m, parse_rational(args.eps))
    else:
        if args.m is None or args.n is None:
            raise BadParams("random needs --m and --n")
        inst = gen_random(args.n, args.m, args.seed, args.denom_bound)
    _emit(format_instance(inst), args.out)
    return EXIT_OK


def cmd_allocate(args) -> int:
    inst = read_instance(args.input)
    steps = run(inst, args.algo)
    ratios = ratio_report(inst, steps) if args.with_ratios else None
    _emit(format_report(inst, steps, algo=args.algo, ratios=ratios), args.out)
    fig = _figure_path(args)
    if fig is not None:
        from .plotting import plot_run
        plot_run(steps, fig, title=inst.note)
    return EXIT_OK


def cmd_ratio(args) -> int:
    inst = read_instance(args.input)
    steps = run(inst)
    report = ratio_report(inst, steps, args.objective)
    _emit(format_report(inst, ratios=report), args.out)
    fig = _figure_path(args)
    if fig is not None:
        from .plotting import plot_ratios
        plot_ratios(report, inst.m, fig, title=inst.note)
    return EXIT_OK


def _verify_one(path: str, equivalence: bool) -> tuple[str, int, str]:
    try:
        inst = read_instance(path)
        report = verify_run(inst, equivalence=equivalence)
    except Exception as exc:  # mapped to an exit code by the caller
        return path, _code_for(exc), f"{type(exc).__name__}: {exc}"
    if report.ok:
        return path, EXIT_OK, f"ok ({report.steps_checked} steps)"
    v = report.violation
    agent = "-" if v.agent is None else str(v.agent)
    return path, EXIT_PROPERTY, f"property={v.prop} step={v.step} agent={agent}: {v.detail}"


def cmd_verify(args) -> int:
    paths = args.input
    equivalence = not args.skip_equivalence
    if args.jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_one, paths, [equivalence] * len(paths)))
    else:
        results = [_verify_one(p, equivalence) for p in paths]
    worst = EXIT_OK
    for path, code, msg in results:
        stream = sys.stdout if code == EXIT_OK else sys.stderr
        print(f"{path}: {msg}", file=stream)
        worst = max(worst, code)
    return worst


def _code_for(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (ValidationError, BadParams)):
        return EXIT_VALIDATION
    if isinstance(exc, PropertyViolation):
        return EXIT_PROPERTY
    if isinstance(exc, (InternalInconsistency, LPError)):
        return EXIT_INTERNAL
    raise exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dyndrf", description="Dynamic DRF allocation and competitive ratios.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an instance file")
    g.add_argument("--family", choices=("t1", "t2", "random"), required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--eps", help="rational such as 1/100")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--denom-bound", type=int, default=8)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    def figure_opts(sp):
        sp.add_argument("--figure", help="PNG path (default: next to --out)")
        sp.add_argument("--no-figure", action="store_true")

    a = sub.add_parser("allocate", help="run every step and write a report")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--algo", choices=sorted(ALGORITHMS), default="bisect")
    a.add_argument("--with-ratios", action="store_true")
    a.add_argument("--out")
    figure_opts(a)
    a.set_defaults(func=cmd_allocate)

    r = sub.add_parser("ratio", help="per-step competitive ratios")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--objective", choices=("maxsum", "maxmin", "both"), default="both")
    r.add_argument("--out")
    figure_opts(r)
    r.set_defaults(func=cmd_ratio)

    v = sub.add_parser("verify", help="check all properties; nonzero exit on violation")
    v.add_argument("--in", dest="input", required=True, nargs="+")
    v.add_argument("--skip-equivalence", action="store_true")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RenormalizedWarning)
        try:
            code = args.func(args)
        except Exception as exc:
            code = _code_for(exc)
            print(f"error: {exc}", file=sys.stderr)
    for w in caught:
        log.warning("%s", w.message)
    return code


if __name__ == "__main__":
    sys.exit(main())
