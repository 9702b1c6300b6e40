"""Schoolbook, Karatsuba and Nikhilam multiplication with operation tallies.

Each strategy returns the exact product together with an :class:`OpCount`
measured in the operand radix: ``mul1`` single-digit products, ``addsub``
single-digit additions/subtractions (carries and borrows included) and
``shifts`` digit-shift operations.

Nikhilam multiplication writes both operands against a shared power of the
radix ``x = R**k``::

    m * n = x * (m + b) + a * b,    a = m - x,  b = n - x

so the only real multiplication is the (usually much smaller) product of the
base differences, which is handled recursively, by a fallback strategy, or
by a single primitive product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .bigdigits import (
    Natural,
    RadixMismatchError,
    SignedNat,
    _add,
    _add_shifted,
    _cmp,
    _shift,
    _strip,
    _sub,
)

__all__ = [
    "OpCount",
    "StrategySpec",
    "MulResult",
    "Frame",
    "BaseDecomposition",
    "ProgressError",
    "mul_primitive",
    "mul_schoolbook",
    "mul_karatsuba",
    "nikhilam_base",
    "mul_nikhilam",
    "multiply",
    "STRATEGIES",
]

Kind = Literal["schoolbook", "karatsuba", "nikhilam"]
STRATEGIES: tuple[str, ...] = ("schoolbook", "karatsuba", "nikhilam")

# below this many digit products the pure-python column loop beats numpy
_NUMPY_MIN_PRODUCTS = 256


class ProgressError(AssertionError):
    """A radix-2 Nikhilam step failed to shrink its operands."""


@dataclass
class OpCount:
    mul1: int = 0
    addsub: int = 0
    shifts: int = 0

    def __add__(self, other: OpCount) -> OpCount:
        return OpCount(self.mul1 + other.mul1, self.addsub + other.addsub, self.shifts + other.shifts)

    def __iadd__(self, other: OpCount) -> OpCount:
        self.mul1 += other.mul1
        self.addsub += other.addsub
        self.shifts += other.shifts
        return self

    def as_dict(self) -> dict[str, int]:
        return {"mul1": self.mul1, "addsub": self.addsub, "shifts": self.shifts}


@dataclass(frozen=True)
class StrategySpec:
    """Which multiplier to run and where its recursions stop.

    ``karatsuba_threshold``: operands shorter than this go to schoolbook.
    ``nikhilam_threshold``: base differences shorter than this are multiplied
    by ``nikhilam_fallback`` instead of another Nikhilam step.
    """

    kind: Kind = "nikhilam"
    karatsuba_threshold: int = 2
    nikhilam_threshold: int = 2
    nikhilam_fallback: Literal["schoolbook", "karatsuba"] = "schoolbook"

    def __post_init__(self) -> None:
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.nikhilam_fallback not in ("schoolbook", "karatsuba"):
            raise ValueError(f"unknown nikhilam fallback {self.nikhilam_fallback!r}")
        if self.karatsuba_threshold < 1:
            raise ValueError("karatsuba_threshold must be >= 1")
        if self.nikhilam_threshold < 2:
            raise ValueError("nikhilam_threshold must be >= 2")


@dataclass(frozen=True)
class BaseDecomposition:
    """``m = x + a`` and ``n = x + b`` with ``x = radix**base_exponent``."""

    base_exponent: int
    x: Natural
    a: SignedNat
    b: SignedNat
    cross: Natural


@dataclass
class Frame:
    """One strategy invocation in a recorded call tree."""

    kind: str
    len_a: int
    len_b: int
    local: OpCount = field(default_factory=OpCount)
    children: list[Frame] = field(default_factory=list)
    product: Natural | None = None
    decomposition: BaseDecomposition | None = None

    def total(self) -> OpCount:
        t = OpCount() + self.local
        for c in self.children:
            t += c.total()
        return t

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class MulResult:
    product: Natural
    count: OpCount
    trace: Frame | None = None


class _Ctx:
    """Per-call tally threaded through the recursion.

    Without tracing every increment lands on one counter.  With tracing,
    ``ops`` always points at the local counter of the innermost open frame.
    """

    __slots__ = ("radix", "spec", "ops", "frame")

    def __init__(self, radix: int, spec: StrategySpec, trace: bool) -> None:
        self.radix = radix
        self.spec = spec
        if trace:
            self.frame: Frame | None = Frame("root", 0, 0)
            self.ops = self.frame.local
        else:
            self.frame = None
            self.ops = OpCount()

    def enter(self, kind: str, x, y) -> Frame | None:
        parent = self.frame
        if parent is None:
            return None
        child = Frame(kind, len(x), len(y))
        parent.children.append(child)
        self.frame = child
        self.ops = child.local
        return parent

    def leave(self, parent: Frame | None, product, decomposition=None) -> None:
        if parent is None:
            return
        self.frame.product = Natural._make(product, self.radix)
        self.frame.decomposition = decomposition
        self.frame = parent
        self.ops = parent.local

    def result(self, product: list[int]) -> MulResult:
        p = Natural._make(product, self.radix)
        if self.frame is None:
            return MulResult(p, self.ops)
        top = self.frame.children[0]
        return MulResult(p, top.total(), top)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


def mul_primitive(d1: int, d2: int, radix: int = 10, count: OpCount | None = None) -> tuple[int, int]:
    """One single-digit product, returned as ``(lo, hi)`` with ``hi*R + lo = d1*d2``."""
    if not (0 <= d1 < radix and 0 <= d2 < radix):
        raise ValueError(f"digits must lie in [0, {radix})")
    if count is not None:
        count.mul1 += 1
    hi, lo = divmod(d1 * d2, radix)
    return lo, hi


def _schoolbook(x: list[int], y: list[int], ctx: _Ctx) -> list[int]:
    if not x or not y:
        return []
    r = ctx.radix
    lx, ly = len(x), len(y)
    ops = ctx.ops
    ops.mul1 += lx * ly
    # every product beyond the first in a column is one accumulation
    ops.addsub += lx * ly - (lx + ly - 1)
    if lx * ly >= _NUMPY_MIN_PRODUCTS:
        cols = np.convolve(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)).tolist()
    else:
        cols = [0] * (lx + ly - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    cols[i + j] += xi * yj
    out = []
    carry = 0
    n = 0
    for c in cols:
        if carry:
            n += 1
            c += carry
        carry, d = divmod(c, r)
        out.append(d)
    while carry:
        carry, d = divmod(carry, r)
        out.append(d)
    ops.addsub += n
    return _strip(out)


def _schoolbook_call(x, y, ctx: _Ctx) -> list[int]:
    token = ctx.enter("schoolbook", x, y)
    p = _schoolbook(x, y, ctx)
    ctx.leave(token, p)
    return p


def _karatsuba_call(x, y, ctx: _Ctx) -> list[int]:
    if ctx.frame is None:
        # untraced fast paths; tallies match the traced route exactly
        if not x or not y:
            return []
        if len(x) == 1 and len(y) == 1:
            ctx.ops.mul1 += 1
            return _strip(list(divmod(x[0] * y[0], ctx.radix)[::-1]))
    token = ctx.enter("karatsuba", x, y)
    if not x or not y:
        p: list[int] = []
    else:
        n = max(len(x), len(y))
        if n == 1 or n < ctx.spec.karatsuba_threshold:
            p = _schoolbook_call(x, y, ctx)
        else:
            r = ctx.radix
            h = n // 2
            x0, x1 = _strip(list(x[:h])), list(x[h:])
            y0, y1 = _strip(list(y[:h])), list(y[h:])
            z2 = _karatsuba_call(x1, y1, ctx)
            z0 = _karatsuba_call(x0, y0, ctx)
            sx = _add(x0, x1, r, ctx.ops)
            sy = _add(y0, y1, r, ctx.ops)
            z1 = _karatsuba_call(sx, sy, ctx)
            ops = ctx.ops
            z1 = _sub(_sub(z1, z2, r, ops), z0, r, ops)
            p = _add_shifted(_add_shifted(z0, z1, h, r, ops), z2, 2 * h, r, ops)
    ctx.leave(token, p)
    return p


def _diff_from_power(x: list[int], k: int, radix: int, ops: OpCount) -> tuple[int, list[int]]:
    """Signed ``x - radix**k`` as ``(sign, magnitude)``."""
    if len(x) > k:
        # x >= R^k: decrement digit k, borrowing upward through zeros
        out = list(x)
        i = k
        while True:
            ops.addsub += 1
            if out[i]:
                out[i] -= 1
                break
            out[i] = radix - 1
            i += 1
        return 1, _strip(out)
    # x < R^k: complement, "all from R-1 and the last from R"
    t = 0
    while x[t] == 0:
        t += 1
    top = radix - 1
    out = [0] * t + [radix - x[t]] + [top - d for d in x[t + 1:]] + [top] * (k - len(x))
    ops.addsub += k - t
    return -1, _strip(out)


def _decompose(x: list[int], y: list[int], ctx: _Ctx) -> tuple[int, int, list[int], int, list[int]]:
    """Choose the shared base and return ``(k, sign_a, |a|, sign_b, |b|)``.

    ``k`` ranges over ``{L-1, L}`` minimising ``max(|a|, |b|)``; ties go to
    ``L-1``.  ``k = L`` can only win when both operands have ``L`` digits and
    their leading digits sum to at least ``R``, so other cases skip it.
    """
    r = ctx.radix
    ops = ctx.ops
    L = max(len(x), len(y))
    k = L - 1
    sa, a = _diff_from_power(x, k, r, ops)
    sb, b = _diff_from_power(y, k, r, ops)
    if len(x) == L and len(y) == L and x[-1] + y[-1] >= r:
        ta, a2 = _diff_from_power(x, L, r, ops)
        tb, b2 = _diff_from_power(y, L, r, ops)
        far = b if _cmp(a, b) < 0 else a
        far2 = b2 if _cmp(a2, b2) < 0 else a2
        if _cmp(far2, far) < 0:
            return L, ta, a2, tb, b2
    return k, sa, a, sb, b


def _cross(x: list[int], sb: int, b: list[int], ctx: _Ctx) -> list[int]:
    if sb > 0:
        return _add(x, b, ctx.radix, ctx.ops)
    return _sub(x, b, ctx.radix, ctx.ops)


def _as_decomposition(k, sa, a, sb, b, cross, radix) -> BaseDecomposition:
    mk = Natural._make
    return BaseDecomposition(
        base_exponent=k,
        x=mk([0] * k + [1], radix),
        a=SignedNat(sa, mk(a, radix)),
        b=SignedNat(sb, mk(b, radix)),
        cross=mk(cross, radix),
    )


def _nikhilam_call(x: list[int], y: list[int], ctx: _Ctx) -> list[int]:
    # The recursion is a single chain (one sub-product per level), so it is
    # unrolled into a descent loop followed by an unwinding loop.
    r = ctx.radix
    thr = ctx.spec.nikhilam_threshold
    pending = []
    while True:
        token = ctx.enter("nikhilam", x, y)
        if not x or not y:
            prod: list[int] = []
            pending.append((token, None))
            break
        L = max(len(x), len(y))
        if L == 1:
            lo, hi = mul_primitive(x[0], y[0], r, ctx.ops)
            prod = _strip([lo, hi])
            pending.append((token, None))
            break
        k, sa, a, sb, b = _decompose(x, y, ctx)
        if r == 2 and (len(a) > L - 1 or len(b) > L - 1):
            raise ProgressError(f"base differences of {L}-bit operands did not shrink")
        cross = _cross(x, sb, b, ctx)
        pending.append((token, (k, sa, a, sb, b, cross)))
        if not a or not b:
            prod = []
            break
        la, lb = len(a), len(b)
        if la == 1 and lb == 1:
            lo, hi = mul_primitive(a[0], b[0], r, ctx.ops)
            prod = _strip([lo, hi])
            break
        if la >= thr and lb >= thr and max(la, lb) < L:
            x, y = a, b
            continue
        if ctx.spec.nikhilam_fallback == "karatsuba":
            prod = _karatsuba_call(a, b, ctx)
        else:
            prod = _schoolbook_call(a, b, ctx)
        break

    for token, dec in reversed(pending):
        dcmp = None
        if dec is not None:
            k, sa, a, sb, b, cross = dec
            ops = ctx.ops
            if not prod:
                prod = _shift(cross, k, ops)
            elif sa == sb:
                prod = _add_shifted(prod, cross, k, r, ops)
            else:
                prod = _sub(_shift(cross, k, ops), prod, r, ops)
            if token is not None:
                dcmp = _as_decomposition(k, sa, a, sb, b, cross, r)
        ctx.leave(token, prod, dcmp)
    return prod


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

DEFAULT_SPEC = StrategySpec()


def _radix(a: Natural, b: Natural) -> int:
    if a.radix != b.radix:
        raise RadixMismatchError(f"radix {a.radix} vs {b.radix}")
    return a.radix


def mul_schoolbook(a: Natural, b: Natural, *, trace: bool = False) -> MulResult:
    """Digit-by-digit product; costs exactly ``len(a) * len(b)`` primitive products."""
    ctx = _Ctx(_radix(a, b), DEFAULT_SPEC, trace)
    return ctx.result(_schoolbook_call(list(a.digits), list(b.digits), ctx))


def mul_karatsuba(a: Natural, b: Natural, spec: StrategySpec = DEFAULT_SPEC, *, trace: bool = False) -> MulResult:
    """Three half-size sub-products split at ``floor(max_len / 2)`` digits."""
    ctx = _Ctx(_radix(a, b), spec, trace)
    return ctx.result(_karatsuba_call(list(a.digits), list(b.digits), ctx))


def mul_nikhilam(a: Natural, b: Natural, spec: StrategySpec = DEFAULT_SPEC, *, trace: bool = False) -> MulResult:
    ctx = _Ctx(_radix(a, b), spec, trace)
    return ctx.result(_nikhilam_call(list(a.digits), list(b.digits), ctx))


def nikhilam_base(a: Natural, b: Natural) -> BaseDecomposition:
    """Base, signed base differences and cross sum for one Nikhilam step."""
    r = _radix(a, b)
    if not a or not b:
        raise ValueError("nikhilam_base needs nonzero operands")
    x, y = list(a.digits), list(b.digits)
    if max(len(x), len(y)) < 2:
        raise ValueError("nikhilam_base needs an operand of at least two digits")
    ctx = _Ctx(r, DEFAULT_SPEC, False)
    k, sa, da, sb, db = _decompose(x, y, ctx)
    cross = _cross(x, sb, db, ctx)
    return _as_decomposition(k, sa, da, sb, db, cross, r)


def multiply(a: Natural, b: Natural, spec: StrategySpec = DEFAULT_SPEC, *, trace: bool = False) -> MulResult:
    if spec.kind == "schoolbook":
        return mul_schoolbook(a, b, trace=trace)
    if spec.kind == "karatsuba":
        return mul_karatsuba(a, b, spec, trace=trace)
    return mul_nikhilam(a, b, spec, trace=trace)
