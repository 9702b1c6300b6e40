"""Instrumented arbitrary-precision multiplication (schoolbook, Karatsuba,
Nikhilam) and affine elliptic-curve arithmetic built on it."""

from .bigdigits import (
    Natural,
    Order,
    RadixMismatchError,
    SignedNat,
    UnderflowError,
    add,
    bit_at,
    compare,
    convert_radix,
    digit_len,
    divrem,
    from_int,
    from_text,
    parse_number,
    shift_digits,
    signed_add,
    signed_mul_sign,
    sub,
    to_text,
)
from .mulstrategies import (
    BaseDecomposition,
    MulResult,
    OpCount,
    StrategySpec,
    mul_karatsuba,
    mul_nikhilam,
    mul_primitive,
    mul_schoolbook,
    multiply,
    nikhilam_base,
)

__version__ = "0.1.0"
