"""GF(p) arithmetic on :class:`Natural` values with a pluggable multiplier.

The modulus is not checked for primality on construction; :func:`is_prime`
does trial division for small moduli when that matters.  Reduction after a
product is plain long division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bigdigits import (
    Natural,
    SignedNat,
    _add,
    _cmp,
    _divrem,
    _sub,
    divrem,
    from_int,
    signed_sub,
)
from .mulstrategies import DEFAULT_SPEC, OpCount, StrategySpec, mul_schoolbook, multiply

__all__ = [
    "FieldElement",
    "ModulusMismatchError",
    "NotInvertibleError",
    "fe_new",
    "fe_from_int",
    "fe_add",
    "fe_sub",
    "fe_neg",
    "fe_mul",
    "fe_inv",
    "is_prime",
]


class ModulusMismatchError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FieldElement:
    value: Natural
    modulus: Natural

    def __int__(self) -> int:
        return int(self.value)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return str(self.value)

    @property
    def radix(self) -> int:
        return self.modulus.radix


def _same(a: FieldElement, b: FieldElement) -> Natural:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"modulus {a.modulus} vs {b.modulus}")
    return a.modulus


def _reduce(v: Natural, p: Natural) -> Natural:
    if _cmp(v.digits, p.digits) < 0:
        return v
    return divrem(v, p)[1]


def fe_new(v: Natural, p: Natural) -> FieldElement:
    if len(p.digits) < 2 and int(p) < 2:
        raise ValueError("modulus must be >= 2")
    if v.radix != p.radix:
        raise ValueError(f"value radix {v.radix} differs from modulus radix {p.radix}")
    return FieldElement(_reduce(v, p), p)


def fe_from_int(v: int, p: Natural) -> FieldElement:
    """Convenience constructor; negative ``v`` is taken mod ``p``."""
    if v < 0:
        v %= int(p)
    return fe_new(from_int(v, p.radix), p)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    p = _same(a, b)
    r = p.radix
    s = _add(a.value.digits, b.value.digits, r)
    if _cmp(s, p.digits) >= 0:
        s = _sub(s, p.digits, r)
    return FieldElement(Natural._make(s, r), p)


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    p = _same(a, b)
    r = p.radix
    x, y = a.value.digits, b.value.digits
    if _cmp(x, y) >= 0:
        d = _sub(x, y, r)
    else:
        d = _sub(p.digits, _sub(y, x, r), r)
    return FieldElement(Natural._make(d, r), p)


def fe_neg(a: FieldElement) -> FieldElement:
    if not a.value:
        return a
    p = a.modulus
    return FieldElement(Natural._make(_sub(p.digits, a.value.digits, p.radix), p.radix), p)


def fe_mul(a: FieldElement, b: FieldElement, spec: StrategySpec = DEFAULT_SPEC) -> tuple[FieldElement, OpCount]:
    """Product via the chosen strategy, then reduced.  Only the product is tallied."""
    p = _same(a, b)
    res = multiply(a.value, b.value, spec)
    return FieldElement(_reduce(res.product, p), p), res.count


def fe_inv(a: FieldElement) -> FieldElement:
    """Inverse by the extended Euclidean algorithm on sign-magnitude values."""
    p = a.modulus
    if not a.value:
        raise NotInvertibleError("zero has no inverse")
    r = p.radix
    zero = Natural._make((), r)
    r0, r1 = list(p.digits), list(a.value.digits)
    s0, s1 = SignedNat(1, zero), SignedNat(1, Natural._make((1,), r))
    while r1:
        q, rem = _divrem(r0, r1, r)
        qs = mul_schoolbook(Natural._make(q, r), s1.magnitude).product
        s0, s1 = s1, signed_sub(s0, SignedNat(s1.sign, qs))
        r0, r1 = r1, rem
    if r0 != [1]:
        raise NotInvertibleError(f"{a.value} is not invertible mod {p}")
    mag = _reduce(s0.magnitude, p)
    if s0.sign < 0 and mag:
        mag = Natural._make(_sub(p.digits, mag.digits, r), r)
    return FieldElement(mag, p)


def is_prime(p: Natural | int) -> bool:
    """Trial division; intended for desk-scale moduli only."""
    n = int(p)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True
