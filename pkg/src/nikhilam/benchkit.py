"""Experiment driver: worked-table reproduction, count sweeps, crossovers, ECC reports."""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bigdigits import Natural, from_int, from_text, to_text
from .mulstrategies import (
    STRATEGIES,
    OpCount,
    StrategySpec,
    mul_schoolbook,
    multiply,
)
from .weierstrass import CurveParams, Point, format_point, is_on_curve, scalar_mul_binary

__all__ = [
    "CSV_HEADER",
    "TableRow",
    "BenchConfig",
    "BenchRecord",
    "CrossoverReport",
    "EccStrategyReport",
    "repro_tables",
    "format_tables",
    "sample_operand",
    "run_sweep",
    "write_csv",
    "summarize",
    "crossover",
    "ecc_count_report",
]

CSV_HEADER = ("strategy", "radix", "digit_len", "trial", "mul1", "addsub", "shifts", "ns")


# ---------------------------------------------------------------------------
# the three worked examples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    title: str
    radix: int
    multiplicand: str
    multiplier: str
    base: str
    diff_m: str   # base difference as the table prints it
    diff_n: str
    cross_text: str
    cross: str
    subproduct: str
    result: str
    nikhilam_mul1: int
    schoolbook_mul1: int
    karatsuba_mul1: int


# (title, radix, m, n, expected result, expected nikhilam mul1, base-minus-operand display)
_TABLES = (
    ("Table I: multiplication of 107 * 109", 10, "107", "109", "11663", 1, True),
    ("Table II: binary multiplication of 11 * 11", 2, "11", "11", "1001", 1, False),
    ("Table III: binary multiplication of 101 * 110", 2, "101", "110", "11110", 2, False),
)


def _diff_display(op: str, base: str, d, base_minus_operand: bool) -> str:
    if base_minus_operand:
        v = ("" if d.negative else "-") + to_text(d.magnitude) if d.magnitude else "0"
        return f"({base}-{op})= {v}"
    v = ("-" if d.negative else "") + to_text(d.magnitude)
    return f"({op}-{base})={v}"


def repro_tables() -> list[TableRow]:
    """Recompute the three worked examples and check them.

    Raises ``AssertionError`` with a diagnostic if any value differs.
    """
    rows = []
    for title, radix, ms, ns, expect, expect_mul1, bmo in _TABLES:
        m, n = from_text(ms, radix), from_text(ns, radix)
        res = multiply(m, n, StrategySpec("nikhilam"), trace=True)
        dec = res.trace.decomposition
        sub = mul_schoolbook(dec.a.magnitude, dec.b.magnitude).product
        base = to_text(dec.x)
        if bmo:
            neg_b = ("" if dec.b.negative else "-") + to_text(dec.b.magnitude)
            neg_a = ("" if dec.a.negative else "-") + to_text(dec.a.magnitude)
            cross_text = f"({ms}-({neg_b}))=({ns}-({neg_a}))={to_text(dec.cross)}"
        else:
            sign = "-" if dec.b.negative else "+"
            cross_text = f"({ms}{sign}{to_text(dec.b.magnitude)})={to_text(dec.cross)}"
        row = TableRow(
            title=title,
            radix=radix,
            multiplicand=ms,
            multiplier=ns,
            base=base,
            diff_m=_diff_display(ms, base, dec.a, bmo),
            diff_n=_diff_display(ns, base, dec.b, bmo),
            cross_text=cross_text,
            cross=to_text(dec.cross),
            subproduct=to_text(sub),
            result=to_text(res.product),
            nikhilam_mul1=res.count.mul1,
            schoolbook_mul1=mul_schoolbook(m, n).count.mul1,
            karatsuba_mul1=multiply(m, n, StrategySpec("karatsuba")).count.mul1,
        )
        if row.result != expect:
            raise AssertionError(f"{title}: result {row.result}, expected {expect}")
        if row.nikhilam_mul1 != expect_mul1:
            raise AssertionError(f"{title}: nikhilam used {row.nikhilam_mul1} products, expected {expect_mul1}")
        rows.append(row)
    return rows


def format_tables(rows: Sequence[TableRow]) -> str:
    out = []
    for r in rows:
        unit = "digit" if r.radix == 10 else "bit"
        out.append(r.title)
        out.append(f"  {'':14}{'Integer':<30}Base Difference")
        out.append(f"  {'Multiplicand':<14}{r.multiplicand:<30}{r.diff_m}")
        out.append(f"  {'Multiplier':<14}{r.multiplier:<30}{r.diff_n}")
        out.append(f"  {'Computation':<14}{r.cross_text:<30}({r.subproduct})")
        out.append(f"  {'':14}{r.cross:<30}{r.subproduct}")
        out.append(f"  {'Result':<14}{r.result}")
        out.append(
            f"  single-{unit} products: nikhilam={r.nikhilam_mul1} "
            f"karatsuba={r.karatsuba_mul1} schoolbook={r.schoolbook_mul1}"
        )
        out.append("")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BenchConfig:
    """Sweep over operand digit lengths ``min_len..max_len`` (inclusive, by ``step``).

    ``sampler`` is ``"uniform"`` (random L-digit operands) or ``"nearbase"``
    (``R**(L-1) + u`` with ``u`` uniform in ``[0, distance]``).
    """

    radix: int = 10
    min_len: int = 1
    max_len: int = 16
    step: int = 1
    trials: int = 10
    sampler: str = "uniform"
    distance: int = 0
    strategies: tuple[str, ...] = STRATEGIES
    seed: int = 0
    karatsuba_threshold: int = 2
    nikhilam_threshold: int = 2
    nikhilam_fallback: str = "schoolbook"

    def __post_init__(self) -> None:
        if self.radix < 2:
            raise ValueError("radix must be >= 2")
        if not 1 <= self.min_len <= self.max_len:
            raise ValueError("need 1 <= min_len <= max_len")
        if self.step < 1:
            raise ValueError("step must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.sampler not in ("uniform", "nearbase"):
            raise ValueError(f"unknown sampler {self.sampler!r}")
        if self.sampler == "nearbase" and not 0 <= self.distance < self.radix ** (self.min_len - 1):
            raise ValueError(
                f"near-base distance {self.distance} must be < radix**(min_len-1) = {self.radix ** (self.min_len - 1)}"
            )
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")

    @property
    def sizes(self) -> list[int]:
        return list(range(self.min_len, self.max_len + 1, self.step))

    def spec(self, kind: str) -> StrategySpec:
        return StrategySpec(kind, self.karatsuba_threshold, self.nikhilam_threshold, self.nikhilam_fallback)


@dataclass(frozen=True)
class BenchRecord:
    strategy: str
    radix: int
    digit_len: int
    trial: int
    mul1: int
    addsub: int
    shifts: int
    ns: int

    def row(self) -> tuple:
        return (self.strategy, self.radix, self.digit_len, self.trial, self.mul1, self.addsub, self.shifts, self.ns)


def sample_operand(rng: random.Random, radix: int, length: int, sampler: str = "uniform", distance: int = 0) -> Natural:
    if sampler == "nearbase":
        return from_int(radix ** (length - 1) + rng.randint(0, distance), radix)
    digits = [rng.randrange(radix) for _ in range(length - 1)] + [rng.randrange(1, radix)]
    return Natural._make(digits, radix)


def run_sweep(cfg: BenchConfig) -> list[BenchRecord]:
    """One record per (strategy, size, trial); products are checked against schoolbook."""
    rng = random.Random(cfg.seed)
    records = []
    for size in cfg.sizes:
        for trial in range(cfg.trials):
            a = sample_operand(rng, cfg.radix, size, cfg.sampler, cfg.distance)
            b = sample_operand(rng, cfg.radix, size, cfg.sampler, cfg.distance)
            oracle = mul_schoolbook(a, b).product
            for kind in cfg.strategies:
                t0 = time.perf_counter_ns()
                res = multiply(a, b, cfg.spec(kind))
                ns = time.perf_counter_ns() - t0
                if res.product != oracle:
                    raise AssertionError(f"{kind} disagrees with schoolbook on {a} * {b}")
                c = res.count
                records.append(BenchRecord(kind, cfg.radix, size, trial, c.mul1, c.addsub, c.shifts, ns))
    records.sort(key=lambda r: (r.digit_len, r.trial, cfg.strategies.index(r.strategy)))
    return records


def write_csv(records: Iterable[BenchRecord], fh=None) -> str:
    buf = io.StringIO() if fh is None else fh
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue() if fh is None else ""


def summarize(records: Iterable[BenchRecord]) -> dict[tuple[str, int], dict[str, float]]:
    """Mean counts and time per (strategy, digit_len)."""
    groups: dict[tuple[str, int], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.strategy, r.digit_len), []).append(r)
    return {
        key: {
            "mul1": statistics.fmean(r.mul1 for r in rs),
            "addsub": statistics.fmean(r.addsub for r in rs),
            "shifts": statistics.fmean(r.shifts for r in rs),
            "ns": statistics.fmean(r.ns for r in rs),
        }
        for key, rs in groups.items()
    }


@dataclass
class CrossoverReport:
    seed: int
    sizes: list[int]
    # (winner, loser) -> smallest size where winner's mean is strictly lower, or None
    by_mul1: dict[tuple[str, str], int | None] = field(default_factory=dict)
    by_time: dict[tuple[str, str], int | None] = field(default_factory=dict)

    def format(self) -> str:
        lines = [f"crossover report (seed={self.seed}, sizes {self.sizes[0]}..{self.sizes[-1]})"]
        for label, table in (("mul1", self.by_mul1), ("wall time", self.by_time)):
            lines.append(f"  by {label}:")
            for (w, l), s in table.items():
                where = "none in range" if s is None else f"from digit_len {s}"
                lines.append(f"    {w} beats {l}: {where}")
        return "\n".join(lines)


def crossover(cfg: BenchConfig, records: Sequence[BenchRecord] | None = None) -> CrossoverReport:
    sizes = cfg.sizes
    if len(sizes) < 3:
        raise ValueError("crossover needs >= 3 sizes")
    if records is None:
        records = run_sweep(cfg)
    means = summarize(records)
    rep = CrossoverReport(cfg.seed, sizes)
    for w in cfg.strategies:
        for l in cfg.strategies:
            if w == l:
                continue
            for metric, table in (("mul1", rep.by_mul1), ("ns", rep.by_time)):
                table[(w, l)] = next(
                    (s for s in sizes if means[(w, s)][metric] < means[(l, s)][metric]), None
                )
    return rep


# ---------------------------------------------------------------------------
# ECC
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EccStrategyReport:
    strategy: str
    point: Point
    count: OpCount
    ns: int
    doublings: int
    additions: int


def ecc_count_report(
    curve: CurveParams,
    P: Point,
    n: int | Natural,
    strategies: Sequence[str] = STRATEGIES,
    specs: dict[str, StrategySpec] | None = None,
) -> list[EccStrategyReport]:
    """Field-multiplication tallies and time of ``n*P`` under each strategy."""
    if not is_on_curve(P, curve):
        raise ValueError(f"{format_point(P)} is not on the curve")
    fast = CurveParams(curve.p, curve.a, curve.b, validate=False)
    out = []
    for kind in strategies:
        spec = (specs or {}).get(kind, StrategySpec(kind))
        t0 = time.perf_counter_ns()
        Q, trace, count = scalar_mul_binary(n, P, fast, spec)
        ns = time.perf_counter_ns() - t0
        out.append(EccStrategyReport(kind, Q, count, ns, trace.doublings, trace.additions))
    first = out[0].point
    for r in out[1:]:
        if r.point != first:
            raise AssertionError(f"{r.strategy} gives {format_point(r.point)}, {out[0].strategy} {format_point(first)}")
    return out
