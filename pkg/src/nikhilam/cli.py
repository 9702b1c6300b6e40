"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import benchkit
from .bigdigits import Natural, convert_radix, parse_number, to_text
from .mulstrategies import STRATEGIES, StrategySpec, multiply
from .weierstrass import (
    CurveParams,
    format_point,
    make_curve,
    parse_curve,
    parse_point,
    point_add,
    point_double,
    scalar_mul_binary,
    scalar_mul_recursive,
)

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_USAGE = 2


def _number(text: str) -> Natural:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int(text: str) -> int:
    return int(_number(text))


def _positive(text: str) -> int:
    v = _int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _at_least_two(text: str) -> int:
    v = _int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return v


def _sizes(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("expected <min>:<max>[:<step>]")
    try:
        vals = [int(p) for p in parts] + ([1] if len(parts) == 2 else [])
    except ValueError:
        raise argparse.ArgumentTypeError("sizes must be integers") from None
    lo, hi, step = vals
    if not (1 <= lo <= hi and step >= 1):
        raise argparse.ArgumentTypeError("need 1 <= min <= max and step >= 1")
    return lo, hi, step


def _sampler(text: str) -> tuple[str, int]:
    if text == "uniform":
        return "uniform", 0
    if text.startswith("nearbase:"):
        try:
            d = int(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError("nearbase distance must be an integer") from None
        if d < 0:
            raise argparse.ArgumentTypeError("nearbase distance must be >= 0")
        return "nearbase", d
    raise argparse.ArgumentTypeError("expected 'uniform' or 'nearbase:<d>'")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _strategy_flags(p: argparse.ArgumentParser, default: str = "nikhilam") -> None:
    p.add_argument("--strategy", choices=STRATEGIES, default=default)
    p.add_argument("--karatsuba-threshold", type=_positive, default=2)
    p.add_argument("--nikhilam-threshold", type=_at_least_two, default=2)
    p.add_argument("--nikhilam-fallback", choices=("schoolbook", "karatsuba"), default="schoolbook")


def _output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--count", action="store_true", help="append operation counts")
    p.add_argument("--json", action="store_true", help="structured output")


def _curve_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--curve", help="'p=<nat> a=<nat> b=<nat>' (alternative to --p/--a/--b)")
    p.add_argument("--p", type=_int)
    p.add_argument("--a", type=_int)
    p.add_argument("--b", type=_int)
    p.add_argument("--radix", type=int, choices=(2, 10), default=10)


def _sweep_flags(p: argparse.ArgumentParser, default_sizes: str) -> None:
    p.add_argument("--radix", type=int, choices=(2, 10), default=10)
    p.add_argument("--sizes", type=_sizes, default=_sizes(default_sizes), help="<min>:<max>[:<step>] digits")
    p.add_argument("--trials", type=_positive, default=5)
    p.add_argument("--sampler", type=_sampler, default=("uniform", 0), help="uniform | nearbase:<d>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategies", default=",".join(STRATEGIES), help="comma-separated subset")
    p.add_argument("--karatsuba-threshold", type=_positive, default=2)
    p.add_argument("--nikhilam-threshold", type=_at_least_two, default=2)
    p.add_argument("--nikhilam-fallback", choices=("schoolbook", "karatsuba"), default="schoolbook")
    p.add_argument("--csv", action="store_true", help="one CSV row per record")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nikhilam", description="Instrumented Nikhilam/Karatsuba/schoolbook arithmetic and ECC.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("mul", help="multiply two naturals")
    m.add_argument("a", type=_number)
    m.add_argument("b", type=_number)
    m.add_argument("--radix", type=int, choices=(2, 10))
    _strategy_flags(m)
    _output_flags(m)

    r = sub.add_parser("repro", help="reproduce the three worked multiplication tables")
    r.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="operation-count and timing sweep")
    _sweep_flags(b, "1:16")

    c = sub.add_parser("crossover", help="smallest size where one strategy beats another")
    _sweep_flags(c, "2:32")

    for name in ("curve-add", "curve-double", "curve-scalarmul"):
        cp = sub.add_parser(name, help=f"{name.split('-', 1)[1]} on y^2 = x^3 + ax + b over GF(p)")
        _curve_flags(cp)
        cp.add_argument(
            "--point",
            action="append",
            required=True,
            help="'(x,y)' or 'inf'; curve-add takes it twice",
        )
        if name == "curve-scalarmul":
            cp.add_argument("--n", type=_int, required=True)
            cp.add_argument("--method", choices=("binary", "recursive"), default="binary")
            cp.add_argument("--trace", action="store_true", help="print the double/add sequence")
        cp.add_argument("--strategy", choices=STRATEGIES, default="nikhilam")
        _output_flags(cp)
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "mul":
        if ns.radix is None and ns.a.radix != ns.b.radix:
            parser.error("operands are in different radices; pass --radix")
    elif ns.command in ("bench", "crossover"):
        kinds = tuple(s.strip() for s in ns.strategies.split(",") if s.strip())
        bad = [k for k in kinds if k not in STRATEGIES]
        if bad or not kinds:
            parser.error(f"invalid --strategies {ns.strategies!r}")
        ns.strategies = kinds
        lo, hi, step = ns.sizes
        sampler, dist = ns.sampler
        if sampler == "nearbase" and dist >= ns.radix ** (lo - 1):
            parser.error(f"nearbase distance must be < radix**(min_size-1) = {ns.radix ** (lo - 1)}")
        if ns.command == "crossover" and len(range(lo, hi + 1, step)) < 3:
            parser.error("crossover needs >= 3 sizes")
    elif ns.command.startswith("curve-"):
        if ns.curve is None and None in (ns.p, ns.a, ns.b):
            parser.error("give --curve or all of --p, --a, --b")
        want = 2 if ns.command == "curve-add" else 1
        if len(ns.point) != want:
            parser.error(f"{ns.command} takes --point exactly {want} time(s)")
    return ns


# ---------------------------------------------------------------------------


def _spec(ns: argparse.Namespace, kind: str | None = None) -> StrategySpec:
    return StrategySpec(
        kind or ns.strategy,
        getattr(ns, "karatsuba_threshold", 2),
        getattr(ns, "nikhilam_threshold", 2),
        getattr(ns, "nikhilam_fallback", "schoolbook"),
    )


def _print_count(count, out) -> None:
    print(f"mul1={count.mul1}", file=out)
    print(f"addsub={count.addsub}", file=out)
    print(f"shifts={count.shifts}", file=out)


def _cmd_mul(ns, out) -> int:
    a, b = ns.a, ns.b
    if ns.radix is not None:
        a, b = convert_radix(a, ns.radix), convert_radix(b, ns.radix)
    res = multiply(a, b, _spec(ns))
    if ns.json:
        doc = {"product": to_text(res.product), "radix": a.radix, "strategy": ns.strategy}
        if ns.count:
            doc["count"] = res.count.as_dict()
        print(json.dumps(doc), file=out)
        return EXIT_OK
    print(to_text(res.product), file=out)
    if ns.count:
        _print_count(res.count, out)
    return EXIT_OK


def _cmd_repro(ns, out) -> int:
    rows = benchkit.repro_tables()
    if ns.json:
        print(json.dumps([r.__dict__ for r in rows], indent=2), file=out)
    else:
        print(benchkit.format_tables(rows), file=out)
    return EXIT_OK


def _config(ns) -> benchkit.BenchConfig:
    lo, hi, step = ns.sizes
    sampler, dist = ns.sampler
    return benchkit.BenchConfig(
        radix=ns.radix,
        min_len=lo,
        max_len=hi,
        step=step,
        trials=ns.trials,
        sampler=sampler,
        distance=dist,
        strategies=ns.strategies,
        seed=ns.seed,
        karatsuba_threshold=ns.karatsuba_threshold,
        nikhilam_threshold=ns.nikhilam_threshold,
        nikhilam_fallback=ns.nikhilam_fallback,
    )


def _cmd_bench(ns, out) -> int:
    cfg = _config(ns)
    records = benchkit.run_sweep(cfg)
    if ns.csv:
        print(f"# seed={cfg.seed}", file=sys.stderr)
        benchkit.write_csv(records, out)
        return EXIT_OK
    means = benchkit.summarize(records)
    if ns.json:
        doc = {
            "seed": cfg.seed,
            "radix": cfg.radix,
            "sampler": cfg.sampler,
            "records": [dict(zip(benchkit.CSV_HEADER, r.row())) for r in records],
        }
        print(json.dumps(doc), file=out)
        return EXIT_OK
    sampler = cfg.sampler + (f":{cfg.distance}" if cfg.sampler == "nearbase" else "")
    print(f"# seed={cfg.seed} radix={cfg.radix} sampler={sampler} trials={cfg.trials}", file=out)
    print(f"{'strategy':<11}{'digit_len':>10}{'mul1':>12}{'addsub':>12}{'shifts':>10}{'mean_ns':>14}", file=out)
    for size in cfg.sizes:
        for kind in cfg.strategies:
            m = means[(kind, size)]
            print(
                f"{kind:<11}{size:>10}{m['mul1']:>12.1f}{m['addsub']:>12.1f}{m['shifts']:>10.1f}{m['ns']:>14.0f}",
                file=out,
            )
    print("# wall times are measurements on this machine, not part of the count comparison", file=out)
    return EXIT_OK


def _cmd_crossover(ns, out) -> int:
    cfg = _config(ns)
    rep = benchkit.crossover(cfg)
    if ns.json:
        doc = {
            "seed": rep.seed,
            "sizes": rep.sizes,
            "by_mul1": {f"{w}<{l}": s for (w, l), s in rep.by_mul1.items()},
            "by_time": {f"{w}<{l}": s for (w, l), s in rep.by_time.items()},
        }
        print(json.dumps(doc), file=out)
    else:
        print(rep.format(), file=out)
    return EXIT_OK


def _curve(ns) -> CurveParams:
    if ns.curve is not None:
        return parse_curve(ns.curve, ns.radix)
    return make_curve(ns.p, ns.a, ns.b, ns.radix)


def _cmd_curve(ns, out) -> int:
    curve = _curve(ns)
    points = [parse_point(t, curve) for t in ns.point]
    spec = StrategySpec(ns.strategy)
    extra = {}
    if ns.command == "curve-add":
        R, count = point_add(points[0], points[1], curve, spec)
    elif ns.command == "curve-double":
        R, count = point_double(points[0], curve, spec)
    else:
        fn = scalar_mul_binary if ns.method == "binary" else scalar_mul_recursive
        R, trace, count = fn(ns.n, points[0], curve, spec)
        extra = {"doublings": trace.doublings, "additions": trace.additions}
        if ns.trace:
            extra["steps"] = "".join(trace.steps)
            extra["expression"] = trace.expression()
    if ns.json:
        doc = {"point": format_point(R), **extra}
        if ns.count:
            doc["count"] = count.as_dict()
        print(json.dumps(doc), file=out)
        return EXIT_OK
    print(format_point(R), file=out)
    for k, v in extra.items():
        print(f"{k}={v}", file=out)
    if ns.count:
        _print_count(count, out)
    return EXIT_OK


_COMMANDS = {
    "mul": _cmd_mul,
    "repro": _cmd_repro,
    "bench": _cmd_bench,
    "crossover": _cmd_crossover,
    "curve-add": _cmd_curve,
    "curve-double": _cmd_curve,
    "curve-scalarmul": _cmd_curve,
}


def run(ns: argparse.Namespace, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        return _COMMANDS[ns.command](ns, out)
    except (ValueError, ArithmeticError, AssertionError) as exc:
        print(f"nikhilam {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(ns)


if __name__ == "__main__":
    sys.exit(main())
