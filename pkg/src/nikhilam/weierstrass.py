"""Affine short-Weierstrass curve ``y^2 = x^3 + a*x + b`` over GF(p).

Every field multiplication in the group law goes through :func:`fe_mul`
with the caller's :class:`StrategySpec`, and the tallies are summed into the
``OpCount`` each operation returns.  Inversions and reductions are not
tallied.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field
from typing import Union

from .bigdigits import Natural, from_int, parse_number
from .mulstrategies import DEFAULT_SPEC, OpCount, StrategySpec, mul_schoolbook
from .primefield import (
    FieldElement,
    _reduce,
    fe_add,
    fe_from_int,
    fe_inv,
    fe_mul,
    fe_neg,
    fe_sub,
)

__all__ = [
    "CurveParams",
    "Infinity",
    "INFINITY",
    "Affine",
    "Point",
    "ScalarTrace",
    "NotOnCurveError",
    "SingularCurveError",
    "make_curve",
    "make_point",
    "parse_curve",
    "parse_point",
    "format_point",
    "is_on_curve",
    "point_neg",
    "point_add",
    "point_double",
    "scalar_mul_binary",
    "scalar_mul_recursive",
    "repeated_addition",
]


class NotOnCurveError(ValueError):
    pass


class SingularCurveError(ValueError):
    pass


class Infinity:
    """The point at infinity (group identity)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()


@dataclass(frozen=True)
class Affine:
    x: FieldElement
    y: FieldElement

    def __repr__(self) -> str:
        return f"Affine({self.x}, {self.y})"


Point = Union[Infinity, Affine]


@dataclass(frozen=True)
class CurveParams:
    """Curve coefficients.  ``validate`` turns on on-curve checks of inputs."""

    p: Natural
    a: FieldElement
    b: FieldElement
    validate: bool = True

    def __post_init__(self) -> None:
        if int(self.p) <= 3:
            raise ValueError("field modulus must exceed 3")
        if self.a.modulus != self.p or self.b.modulus != self.p:
            raise ValueError("coefficients must live in GF(p)")
        a, b, p = self.a, self.b, self.p
        a3 = _mul(_mul(a, a), a)
        disc = fe_add(_mul(fe_from_int(4, p), a3), _mul(fe_from_int(27, p), _mul(b, b)))
        if not disc.value:
            raise SingularCurveError("4a^3 + 27b^2 = 0 (mod p): curve is singular")

    def element(self, v: int) -> FieldElement:
        return fe_from_int(v, self.p)


def _mul(a: FieldElement, b: FieldElement) -> FieldElement:
    # uncounted product for validation work
    return FieldElement(_reduce(mul_schoolbook(a.value, b.value).product, a.modulus), a.modulus)


@dataclass
class ScalarTrace:
    """Group operations in execution order: ``"D"`` doubles, ``"A"`` adds P."""

    steps: list[str] = field(default_factory=list)

    @property
    def doublings(self) -> int:
        return self.steps.count("D")

    @property
    def additions(self) -> int:
        return self.steps.count("A")

    def replay(self, P: Point, curve: CurveParams, spec: StrategySpec = DEFAULT_SPEC) -> Point:
        Q: Point = INFINITY
        for s in self.steps:
            Q = point_double(Q, curve, spec)[0] if s == "D" else point_add(Q, P, curve, spec)[0]
        return Q

    def expression(self) -> str:
        """Nested form of the steps, e.g. ``2(2(P+2P))`` for 12P."""
        e = "0"
        for s in self.steps:
            if s == "A":
                e = "P" if e == "0" else "P+" + e
            elif e == "P":
                e = "2P"
            elif e != "0":
                e = f"2({e})"
        return e


# ---------------------------------------------------------------------------
# construction and text formats
# ---------------------------------------------------------------------------


def make_curve(p: int, a: int, b: int, radix: int = 10, validate: bool = True) -> CurveParams:
    pn = from_int(p, radix)
    return CurveParams(pn, fe_from_int(a, pn), fe_from_int(b, pn), validate)


def make_point(x: int, y: int, curve: CurveParams) -> Affine:
    return Affine(curve.element(x), curve.element(y))


_CURVE_RE = re.compile(r"^\s*p\s*=\s*(\S+)\s+a\s*=\s*(\S+)\s+b\s*=\s*(\S+)\s*$")
_POINT_RE = re.compile(r"^\s*\(\s*([0-9a-fA-Fxb_]+)\s*,\s*([0-9a-fA-Fxb_]+)\s*\)\s*$")


def parse_curve(text: str, radix: int = 10, validate: bool = True) -> CurveParams:
    """Parse ``p=<nat> a=<nat> b=<nat>``."""
    m = _CURVE_RE.match(text)
    if not m:
        raise ValueError(f"malformed curve {text!r}; expected 'p=<nat> a=<nat> b=<nat>'")
    p, a, b = (int(parse_number(g)) for g in m.groups())
    return make_curve(p, a, b, radix, validate)


def parse_point(text: str, curve: CurveParams) -> Point:
    """Parse ``(<x>,<y>)`` or ``inf``."""
    if text.strip().lower() in ("inf", "infinity", "o"):
        return INFINITY
    m = _POINT_RE.match(text)
    if not m:
        raise ValueError(f"malformed point {text!r}; expected '(<x>,<y>)' or 'inf'")
    x, y = (int(parse_number(g)) for g in m.groups())
    return make_point(x, y, curve)


def format_point(P: Point) -> str:
    if isinstance(P, Infinity):
        return "inf"
    return f"({int(P.x)},{int(P.y)})"


# ---------------------------------------------------------------------------
# group law
# ---------------------------------------------------------------------------


def is_on_curve(P: Point, curve: CurveParams) -> bool:
    if isinstance(P, Infinity):
        return True
    if P.x.modulus != curve.p or P.y.modulus != curve.p:
        return False
    lhs = _mul(P.y, P.y)
    rhs = fe_add(fe_add(_mul(_mul(P.x, P.x), P.x), _mul(curve.a, P.x)), curve.b)
    return lhs.value == rhs.value


def _require(P: Point, curve: CurveParams) -> None:
    if curve.validate and not is_on_curve(P, curve):
        raise NotOnCurveError(f"{format_point(P)} is not on the curve")


def point_neg(P: Point) -> Point:
    if isinstance(P, Infinity):
        return P
    return Affine(P.x, fe_neg(P.y))


def _double(P: Affine, curve: CurveParams, spec: StrategySpec, ops: OpCount) -> Point:
    if not P.y.value:
        return INFINITY
    xx, c = fe_mul(P.x, P.x, spec)
    ops += c
    num, c = fe_mul(curve.element(3), xx, spec)
    ops += c
    num = fe_add(num, curve.a)
    lam, c = fe_mul(num, fe_inv(fe_add(P.y, P.y)), spec)
    ops += c
    lam2, c = fe_mul(lam, lam, spec)
    ops += c
    xr = fe_sub(lam2, fe_add(P.x, P.x))
    t, c = fe_mul(lam, fe_sub(P.x, xr), spec)
    ops += c
    return Affine(xr, fe_sub(t, P.y))


def point_double(P: Point, curve: CurveParams, spec: StrategySpec = DEFAULT_SPEC) -> tuple[Point, OpCount]:
    """Tangent rule; a vertical tangent (y = 0) gives the point at infinity."""
    ops = OpCount()
    if isinstance(P, Infinity):
        return P, ops
    _require(P, curve)
    return _double(P, curve, spec, ops), ops


def point_add(P: Point, Q: Point, curve: CurveParams, spec: StrategySpec = DEFAULT_SPEC) -> tuple[Point, OpCount]:
    """Chord rule with ``Yr = lam*(Xp - Xr) - Yp``."""
    ops = OpCount()
    if isinstance(P, Infinity):
        _require(Q, curve)
        return Q, ops
    if isinstance(Q, Infinity):
        _require(P, curve)
        return P, ops
    _require(P, curve)
    _require(Q, curve)
    if P.x.value == Q.x.value:
        if P.y.value == Q.y.value and P.y.value:
            return _double(P, curve, spec, ops), ops
        # Q = -P
        return INFINITY, ops
    lam, c = fe_mul(fe_sub(Q.y, P.y), fe_inv(fe_sub(Q.x, P.x)), spec)
    ops += c
    lam2, c = fe_mul(lam, lam, spec)
    ops += c
    xr = fe_sub(fe_sub(lam2, P.x), Q.x)
    t, c = fe_mul(lam, fe_sub(P.x, xr), spec)
    ops += c
    return Affine(xr, fe_sub(t, P.y)), ops


# ---------------------------------------------------------------------------
# scalar multiplication
# ---------------------------------------------------------------------------


def _as_binary(n: Natural | int) -> list[int]:
    """Bits of n, least significant first."""
    if isinstance(n, Natural):
        if n.radix == 2:
            return list(n.digits)
        n = int(n)
    if n < 0:
        raise ValueError("scalar must be non-negative")
    return [int(c) for c in reversed(bin(n)[2:])] if n else []


def scalar_mul_binary(
    n: Natural | int, P: Point, curve: CurveParams, spec: StrategySpec = DEFAULT_SPEC
) -> tuple[Point, ScalarTrace, OpCount]:
    """Double-and-add from the most significant bit down.

    Starts from ``Q = INFINITY``; the doubling at the top bit is recorded in
    the trace but costs nothing since doubling infinity is free.
    """
    _require(P, curve)
    trace = ScalarTrace()
    ops = OpCount()
    Q: Point = INFINITY
    for bit in reversed(_as_binary(n)):
        Q, c = point_double(Q, curve, spec)
        ops += c
        trace.steps.append("D")
        if bit:
            Q, c = point_add(Q, P, curve, spec)
            ops += c
            trace.steps.append("A")
    return Q, trace, ops


def scalar_mul_recursive(
    n: Natural | int, P: Point, curve: CurveParams, spec: StrategySpec = DEFAULT_SPEC
) -> tuple[Point, ScalarTrace, OpCount]:
    """``f(0) = 0``; odd ``n``: ``P + f(n-1)``; even ``n``: ``2 f(n/2)``."""
    _require(P, curve)
    k = int(n)
    if k < 0:
        raise ValueError("scalar must be non-negative")
    trace = ScalarTrace()
    ops = OpCount()

    def f(m: int) -> Point:
        nonlocal ops
        if m == 0:
            return INFINITY
        if m % 2 == 1:
            R = f(m - 1)
            S, c = point_add(P, R, curve, spec)
            trace.steps.append("A")
        else:
            R = f(m // 2)
            S, c = point_double(R, curve, spec)
            trace.steps.append("D")
        ops += c
        return S

    depth = 2 * k.bit_length() + 50
    old = sys.getrecursionlimit()
    if depth > old:
        sys.setrecursionlimit(depth)
    try:
        Q = f(k)
    finally:
        sys.setrecursionlimit(old)
    return Q, trace, ops


def repeated_addition(n: int, P: Point, curve: CurveParams) -> Point:
    """``P + P + ... + P``: the exponential-time reference."""
    Q: Point = INFINITY
    for _ in range(n):
        Q = point_add(Q, P, curve)[0]
    return Q
