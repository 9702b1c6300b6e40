"""Radix-parametric non-negative integers stored as little-endian digit tuples.

Every arithmetic routine here works digit by digit so that the multiplication
strategies built on top can report costs in single-digit operations.  The
list-level helpers (``_add``, ``_sub``, ...) take an optional ``ops`` tally
(anything with ``addsub`` and ``shifts`` attributes) and bump it by the
number of digit operations they actually performed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Natural",
    "SignedNat",
    "Order",
    "RadixMismatchError",
    "UnderflowError",
    "from_int",
    "from_text",
    "to_text",
    "parse_number",
    "convert_radix",
    "compare",
    "add",
    "sub",
    "shift_digits",
    "divrem",
    "digit_len",
    "bit_at",
    "signed",
    "signed_neg",
    "signed_add",
    "signed_sub",
    "signed_mul_sign",
]

_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"


class RadixMismatchError(ValueError):
    """Two operands with different radices were combined."""


class UnderflowError(ArithmeticError):
    """Natural subtraction would go negative."""


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


# ---------------------------------------------------------------------------
# list-level kernels (little-endian, canonical: no trailing zero digits)
# ---------------------------------------------------------------------------


def _strip(d: list[int]) -> list[int]:
    while d and d[-1] == 0:
        d.pop()
    return d


def _cmp(x: Sequence[int], y: Sequence[int]) -> int:
    lx, ly = len(x), len(y)
    if lx != ly:
        return -1 if lx < ly else 1
    for i in range(lx - 1, -1, -1):
        if x[i] != y[i]:
            return -1 if x[i] < y[i] else 1
    return 0


def _add(x: Sequence[int], y: Sequence[int], radix: int, ops=None) -> list[int]:
    """x + y.  One op per position where both digits exist, one per carry-in."""
    if len(x) < len(y):
        x, y = y, x
    lx, ly = len(x), len(y)
    out = []
    append = out.append
    carry = 0
    n = 0
    for xi, yi in zip(x, y):
        s = xi + yi + carry
        n += carry
        if s >= radix:
            append(s - radix)
            carry = 1
        else:
            append(s)
            carry = 0
    n += ly
    i = ly
    while carry and i < lx:
        n += 1
        s = x[i] + 1
        if s == radix:
            append(0)
        else:
            append(s)
            carry = 0
        i += 1
    out.extend(x[i:])
    if carry:
        append(1)
    if ops is not None:
        ops.addsub += n
    return out


def _add_shifted(x: Sequence[int], y: Sequence[int], k: int, radix: int, ops=None) -> list[int]:
    """x + y * radix**k without materialising the shifted operand."""
    if not y:
        return list(x)
    if ops is not None and k:
        ops.shifts += 1
    if len(x) <= k:
        return list(x) + [0] * (k - len(x)) + list(y)
    return list(x[:k]) + _add(x[k:], y, radix, ops)


def _sub(x: Sequence[int], y: Sequence[int], radix: int, ops=None) -> list[int]:
    """x - y for x >= y.  One op per position of y, one per borrow-in."""
    lx, ly = len(x), len(y)
    if lx < ly:
        raise UnderflowError("subtrahend exceeds minuend")
    out = []
    append = out.append
    borrow = 0
    n = 0
    for xi, yi in zip(x, y):
        s = xi - yi - borrow
        n += borrow
        if s < 0:
            append(s + radix)
            borrow = 1
        else:
            append(s)
            borrow = 0
    n += ly
    i = ly
    while borrow and i < lx:
        n += 1
        s = x[i] - 1
        if s < 0:
            append(radix - 1)
        else:
            append(s)
            borrow = 0
        i += 1
    if borrow:
        raise UnderflowError("subtrahend exceeds minuend")
    out.extend(x[i:])
    if ops is not None:
        ops.addsub += n
    return _strip(out)


def _shift(x: Sequence[int], k: int, ops=None) -> list[int]:
    if not x:
        return []
    if ops is not None and k:
        ops.shifts += 1
    return [0] * k + list(x)


def _mul_small(x: Sequence[int], s: int, radix: int) -> list[int]:
    """x * s for a small non-negative python int s (plumbing, uncounted)."""
    if not x or s == 0:
        return []
    out = []
    carry = 0
    for d in x:
        carry += d * s
        out.append(carry % radix)
        carry //= radix
    while carry:
        out.append(carry % radix)
        carry //= radix
    return out


def _divrem_small(x: Sequence[int], s: int, radix: int) -> tuple[list[int], int]:
    q = [0] * len(x)
    r = 0
    for i in range(len(x) - 1, -1, -1):
        r = r * radix + x[i]
        q[i], r = divmod(r, s)
    return _strip(q), r


def _divrem(x: Sequence[int], y: Sequence[int], radix: int) -> tuple[list[int], list[int]]:
    """Long division with normalised trial quotients (Knuth, TAOCP vol. 2, 4.3.1 D)."""
    if not y:
        raise ZeroDivisionError("division by zero")
    if _cmp(x, y) < 0:
        return [], list(x)
    if len(y) == 1:
        q, r = _divrem_small(x, y[0], radix)
        return q, ([r] if r else [])

    f = radix // (y[-1] + 1)
    u = _mul_small(x, f, radix) if f > 1 else list(x)
    v = _mul_small(y, f, radix) if f > 1 else list(y)
    n = len(v)
    m = len(u) - n
    u.append(0)
    q = [0] * (m + 1)
    vtop, vnext = v[-1], v[-2]
    for j in range(m, -1, -1):
        num = u[j + n] * radix + u[j + n - 1]
        qhat, rhat = divmod(num, vtop)
        while qhat >= radix or qhat * vnext > rhat * radix + u[j + n - 2]:
            qhat -= 1
            rhat += vtop
            if rhat >= radix:
                break
        if qhat == 0:
            continue
        borrow = 0
        carry = 0
        for i in range(n):
            p = qhat * v[i] + carry
            carry = p // radix
            t = u[i + j] - (p - carry * radix) - borrow
            if t < 0:
                u[i + j] = t + radix
                borrow = 1
            else:
                u[i + j] = t
                borrow = 0
        t = u[j + n] - carry - borrow
        if t < 0:
            # qhat was one too large: add the divisor back
            u[j + n] = t + radix
            qhat -= 1
            carry = 0
            for i in range(n):
                s = u[i + j] + v[i] + carry
                if s >= radix:
                    u[i + j] = s - radix
                    carry = 1
                else:
                    u[i + j] = s
                    carry = 0
            u[j + n] = (u[j + n] + carry) % radix
        else:
            u[j + n] = t
        q[j] = qhat
    r = _strip(u[:n])
    if f > 1:
        r, _ = _divrem_small(r, f, radix)
    return _strip(q), r


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Natural:
    """Non-negative integer; ``digits[i]`` is the coefficient of ``radix**i``.

    Zero is the empty digit tuple.  Construction validates the digits; use
    :func:`from_int` or :func:`from_text` for convenience.
    """

    digits: tuple[int, ...]
    radix: int = 10

    def __post_init__(self) -> None:
        if self.radix < 2:
            raise ValueError(f"radix must be >= 2, got {self.radix}")
        r = self.radix
        if not isinstance(self.digits, tuple):
            object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            if not 0 <= d < r:
                raise ValueError(f"digit {d} out of range for radix {r}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("non-canonical digits: most significant digit is zero")

    @classmethod
    def _make(cls, digits: Iterable[int], radix: int) -> Natural:
        # trusted path for kernel output, skips validation
        obj = object.__new__(cls)
        object.__setattr__(obj, "digits", tuple(digits))
        object.__setattr__(obj, "radix", radix)
        return obj

    @classmethod
    def zero(cls, radix: int = 10) -> Natural:
        return cls((), radix)

    def __int__(self) -> int:
        v = 0
        r = self.radix
        for d in reversed(self.digits):
            v = v * r + d
        return v

    def __index__(self) -> int:
        return int(self)

    def __bool__(self) -> bool:
        return bool(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Natural({to_text(self)!r}, radix={self.radix})"

    def __lt__(self, other: Natural) -> bool:
        return compare(self, other) < 0

    def __le__(self, other: Natural) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: Natural) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: Natural) -> bool:
        return compare(self, other) >= 0

    def __add__(self, other: Natural) -> Natural:
        return add(self, other)

    def __sub__(self, other: Natural) -> Natural:
        return sub(self, other)


@dataclass(frozen=True)
class SignedNat:
    """Sign-and-magnitude integer; ``sign`` is +1 or -1 and zero is always +1."""

    sign: int
    magnitude: Natural

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not self.magnitude and self.sign != 1:
            object.__setattr__(self, "sign", 1)

    @property
    def radix(self) -> int:
        return self.magnitude.radix

    @property
    def negative(self) -> bool:
        return self.sign < 0

    def __int__(self) -> int:
        return self.sign * int(self.magnitude)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + to_text(self.magnitude)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _check(a: Natural, b: Natural) -> int:
    if a.radix != b.radix:
        raise RadixMismatchError(f"radix {a.radix} vs {b.radix}")
    return a.radix


def from_int(value: int, radix: int = 10) -> Natural:
    if value < 0:
        raise ValueError("Natural cannot hold a negative value")
    if radix < 2:
        raise ValueError(f"radix must be >= 2, got {radix}")
    digits = []
    while value:
        value, d = divmod(value, radix)
        digits.append(d)
    return Natural._make(digits, radix)


def from_text(s: str, radix: int = 10) -> Natural:
    """Parse a plain digit string (most significant digit first)."""
    if not 2 <= radix <= len(_ALPHABET):
        raise ValueError(f"unsupported radix {radix}")
    if not s:
        raise ValueError("empty digit string")
    digits = []
    for ch in reversed(s.lower()):
        d = _ALPHABET.find(ch)
        if d < 0 or d >= radix:
            raise ValueError(f"invalid digit {ch!r} for radix {radix}")
        digits.append(d)
    return Natural._make(_strip(digits), radix)


def to_text(x: Natural) -> str:
    if not x.digits:
        return "0"
    return "".join(_ALPHABET[d] for d in reversed(x.digits))


def convert_radix(x: Natural, radix: int) -> Natural:
    """Re-express ``x`` in another radix by Horner evaluation in the target radix."""
    if x.radix == radix:
        return x
    if radix < 2:
        raise ValueError(f"radix must be >= 2, got {radix}")
    acc: list[int] = []
    for d in reversed(x.digits):
        acc = _mul_small(acc, x.radix, radix)
        if d:
            acc = _add(acc, _mul_small([1], d, radix), radix)
    return Natural._make(acc, radix)


def parse_number(s: str, radix: int | None = None) -> Natural:
    """Parse CLI-style input: bare digits are decimal, ``0b`` binary, ``0x`` hex.

    Hex input is converted to radix 2.  An explicit ``radix`` converts the
    parsed value into that radix.
    """
    t = s.strip().lower().replace("_", "")
    if t.startswith("0b"):
        x = from_text(t[2:], 2)
    elif t.startswith("0x"):
        body = t[2:]
        if not body:
            raise ValueError("empty digit string")
        bits = []
        for ch in reversed(body):
            d = _ALPHABET.find(ch)
            if d < 0 or d >= 16:
                raise ValueError(f"invalid digit {ch!r} for radix 16")
            bits.extend((d >> i) & 1 for i in range(4))
        x = Natural._make(_strip(bits), 2)
    else:
        x = from_text(t, 10)
    return convert_radix(x, radix) if radix is not None else x


def compare(a: Natural, b: Natural) -> Order:
    _check(a, b)
    return Order(_cmp(a.digits, b.digits))


def add(a: Natural, b: Natural, ops=None) -> Natural:
    r = _check(a, b)
    return Natural._make(_add(a.digits, b.digits, r, ops), r)


def sub(a: Natural, b: Natural, ops=None) -> Natural:
    r = _check(a, b)
    if _cmp(a.digits, b.digits) < 0:
        raise UnderflowError(f"{to_text(a)} - {to_text(b)} underflows")
    return Natural._make(_sub(a.digits, b.digits, r, ops), r)


def shift_digits(a: Natural, k: int, ops=None) -> Natural:
    """a * radix**k."""
    if k < 0:
        raise ValueError("shift count must be non-negative")
    return Natural._make(_shift(a.digits, k, ops), a.radix)


def divrem(a: Natural, b: Natural) -> tuple[Natural, Natural]:
    r = _check(a, b)
    if not b.digits:
        raise ZeroDivisionError("division by zero")
    q, rem = _divrem(a.digits, b.digits, r)
    return Natural._make(q, r), Natural._make(rem, r)


def digit_len(a: Natural) -> int:
    return len(a.digits)


def bit_at(a: Natural, i: int) -> int:
    if a.radix != 2:
        raise ValueError("bit_at requires a radix-2 Natural")
    if not 0 <= i < len(a.digits):
        raise IndexError(f"bit index {i} out of range for length {len(a.digits)}")
    return a.digits[i]


# signed helpers ------------------------------------------------------------


def signed(value: Natural, sign: int = 1) -> SignedNat:
    return SignedNat(sign, value)


def signed_neg(a: SignedNat) -> SignedNat:
    return SignedNat(-a.sign, a.magnitude)


def signed_mul_sign(sa: int, sb: int) -> int:
    return 1 if sa == sb else -1


def signed_add(a: SignedNat, b: SignedNat, ops=None) -> SignedNat:
    r = _check(a.magnitude, b.magnitude)
    x, y = a.magnitude.digits, b.magnitude.digits
    if a.sign == b.sign:
        return SignedNat(a.sign, Natural._make(_add(x, y, r, ops), r))
    c = _cmp(x, y)
    if c == 0:
        return SignedNat(1, Natural._make((), r))
    if c > 0:
        return SignedNat(a.sign, Natural._make(_sub(x, y, r, ops), r))
    return SignedNat(b.sign, Natural._make(_sub(y, x, r, ops), r))


def signed_sub(a: SignedNat, b: SignedNat, ops=None) -> SignedNat:
    return signed_add(a, signed_neg(b), ops)
