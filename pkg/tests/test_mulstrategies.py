import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import digits_of, rand_bits
from nikhilam.bigdigits import Natural, RadixMismatchError, from_int, from_text
from nikhilam.mulstrategies import (
    STRATEGIES,
    OpCount,
    StrategySpec,
    mul_karatsuba,
    mul_nikhilam,
    mul_primitive,
    mul_schoolbook,
    multiply,
    nikhilam_base,
)

radices = st.sampled_from([2, 10])
ALL_SPECS = [
    StrategySpec("schoolbook"),
    StrategySpec("karatsuba"),
    StrategySpec("karatsuba", karatsuba_threshold=5),
    StrategySpec("nikhilam"),
    StrategySpec("nikhilam", nikhilam_threshold=4),
    StrategySpec("nikhilam", nikhilam_fallback="karatsuba"),
]


def b2(s):
    return from_text(s, 2)


def d10(v):
    return from_int(v, 10)


# -- primitive -----------------------------------------------------------------


def test_mul_primitive():
    c = OpCount()
    assert mul_primitive(7, 9, 10, c) == (3, 6)
    assert c.mul1 == 1
    assert mul_primitive(0, 8, 10) == (0, 0)
    assert mul_primitive(1, 1, 2) == (1, 0)
    with pytest.raises(ValueError):
        mul_primitive(2, 1, 2)


# -- schoolbook ----------------------------------------------------------------


def test_schoolbook_examples():
    r = mul_schoolbook(d10(107), d10(109))
    assert r.product == d10(11663) and r.count.mul1 == 9
    r = mul_schoolbook(d10(12345), Natural.zero())
    assert not r.product and r.count.mul1 == 0
    r = mul_schoolbook(b2("101"), b2("110"))
    assert r.product == b2("11110") and r.count.mul1 == 9


@given(st.integers(1, 10 ** 80), st.integers(1, 10 ** 80), radices)
def test_schoolbook_exact_count(x, y, r):
    a, b = from_int(x, r), from_int(y, r)
    res = mul_schoolbook(a, b)
    assert int(res.product) == x * y
    assert res.count.mul1 == len(a) * len(b)


def test_schoolbook_numpy_and_loop_paths_agree():
    # 16x16 digits stays on the loop path, 17x17 crosses to numpy
    rng = random.Random(5)
    for n in (15, 16, 17, 40):
        x, y = rng.randrange(10 ** (n - 1), 10 ** n), rng.randrange(10 ** (n - 1), 10 ** n)
        res = mul_schoolbook(d10(x), d10(y))
        assert int(res.product) == x * y
        cols = 2 * n - 1
        assert res.count.addsub >= n * n - cols


# -- karatsuba -----------------------------------------------------------------


def test_karatsuba_table_one():
    r = mul_karatsuba(d10(107), d10(109))
    assert r.product == d10(11663)
    # split at 1 digit: z2 = 10*10 (2), z0 = 7*9 (1), z1 = 17*19 (3)
    assert r.count.mul1 == 6


def test_karatsuba_identity_operand_under_threshold():
    x = d10(987654)
    r = mul_karatsuba(d10(1), x, StrategySpec("karatsuba", karatsuba_threshold=100))
    assert r.product == x and r.count.mul1 == len(x)


def test_karatsuba_small_example():
    assert mul_karatsuba(d10(1234), d10(5678)).product == d10(7006652)


def test_karatsuba_matches_schoolbook_256_bit():
    rng = random.Random(256)
    for _ in range(200):
        a, b = from_int(rand_bits(rng, 256), 2), from_int(rand_bits(rng, 256), 2)
        assert mul_karatsuba(a, b).product == mul_schoolbook(a, b).product


# -- nikhilam base --------------------------------------------------------------


def test_nikhilam_base_table_one():
    d = nikhilam_base(d10(107), d10(109))
    assert (d.base_exponent, int(d.x), int(d.a), int(d.b), int(d.cross)) == (2, 100, 7, 9, 116)


def test_nikhilam_base_binary_tables():
    d = nikhilam_base(b2("11"), b2("11"))
    assert (d.x, d.a.magnitude, d.b.magnitude, d.cross) == (b2("10"), b2("1"), b2("1"), b2("100"))
    assert d.a.sign == d.b.sign == 1
    d = nikhilam_base(b2("101"), b2("110"))
    assert (d.x, d.a.magnitude, d.b.magnitude, d.cross) == (b2("100"), b2("1"), b2("10"), b2("111"))


def test_nikhilam_base_rejects_short_operands():
    with pytest.raises(ValueError):
        nikhilam_base(d10(7), d10(9))
    with pytest.raises(ValueError):
        nikhilam_base(d10(0), d10(19))


def _base_oracle(m, n, radix):
    L = max(len(digits_of(m, radix)), len(digits_of(n, radix)))
    best = None
    for k in (L - 1, L):
        x = radix ** k
        score = max(abs(m - x), abs(n - x))
        if best is None or score < best[0]:
            best = (score, k)
    return best[1]


@settings(max_examples=400)
@given(st.integers(1, 10 ** 30), st.integers(1, 10 ** 30), radices)
def test_nikhilam_base_choice_and_invariants(m, n, r):
    a, b = from_int(m, r), from_int(n, r)
    if max(len(a), len(b)) < 2:
        return
    d = nikhilam_base(a, b)
    assert d.base_exponent == _base_oracle(m, n, r)
    x = r ** d.base_exponent
    assert int(d.x) == x
    assert m == x + int(d.a) and n == x + int(d.b)
    assert int(d.cross) == m + int(d.b) == n + int(d.a) == x + int(d.a) + int(d.b)


# -- nikhilam multiply -----------------------------------------------------------


@pytest.mark.parametrize(
    "m, n, radix, product, mul1",
    [
        ("107", "109", 10, "11663", 1),
        ("11", "11", 2, "1001", 1),
        ("101", "110", 2, "11110", 2),
        ("10", "10", 10, "100", 0),
    ],
)
def test_nikhilam_examples(m, n, radix, product, mul1):
    r = mul_nikhilam(from_text(m, radix), from_text(n, radix))
    assert r.product == from_text(product, radix)
    assert r.count.mul1 == mul1


def test_nikhilam_mixed_sign_differences():
    # 98 = 100 - 2, 104 = 100 + 4: the sub-product is negative
    r = mul_nikhilam(d10(98), d10(104))
    assert r.product == d10(98 * 104)
    assert r.count.mul1 == 1


def test_nikhilam_far_from_base_uses_fallback():
    # 451 - 100 = 351 is as long as the operand, so no smaller subproblem exists
    r = mul_nikhilam(d10(451), d10(120), trace=True)
    assert r.product == d10(451 * 120)
    assert [c.kind for c in r.trace.children] == ["schoolbook"]
    r = mul_nikhilam(d10(451), d10(120), StrategySpec(nikhilam_fallback="karatsuba"), trace=True)
    assert [c.kind for c in r.trace.children] == ["karatsuba"]


def test_nikhilam_threshold_stops_recursion():
    # both differences from 2^11 are 6 bits long
    a, b = from_int(2 ** 11 + 0b111111, 2), from_int(2 ** 11 + 0b101010, 2)
    deep = mul_nikhilam(a, b, StrategySpec(nikhilam_threshold=2), trace=True)
    shallow = mul_nikhilam(a, b, StrategySpec(nikhilam_threshold=7), trace=True)
    assert deep.product == shallow.product == from_int(int(a) * int(b), 2)
    depth = lambda t: sum(1 for f in t.walk() if f.kind == "nikhilam")  # noqa: E731
    assert depth(deep.trace) > depth(shallow.trace) == 1


def test_multiply_dispatch():
    assert multiply(d10(107), d10(109), StrategySpec("schoolbook")).product == d10(11663)
    assert not multiply(Natural.zero(), d10(55), StrategySpec("nikhilam")).product
    with pytest.raises(RadixMismatchError):
        multiply(d10(3), from_int(3, 2))


def test_strategy_spec_validation():
    with pytest.raises(ValueError):
        StrategySpec("fft")
    with pytest.raises(ValueError):
        StrategySpec(nikhilam_threshold=1)
    with pytest.raises(ValueError):
        StrategySpec(karatsuba_threshold=0)
    with pytest.raises(ValueError):
        StrategySpec(nikhilam_fallback="nikhilam")


# -- properties -----------------------------------------------------------------


@given(st.integers(0, 10 ** 40), st.integers(0, 10 ** 40), st.integers(0, 10 ** 40))
def test_nikhilam_identity_exact(m, n, x):
    assert x * (m + n - x) + (m - x) * (n - x) == m * n


@settings(max_examples=300)
@given(st.integers(0, 2 ** 300), st.integers(0, 2 ** 300), radices, st.sampled_from(ALL_SPECS))
def test_strategies_agree(x, y, r, spec):
    a, b = from_int(x, r), from_int(y, r)
    assert int(multiply(a, b, spec).product) == x * y


@settings(max_examples=150)
@given(st.integers(0, 2 ** 200), st.integers(0, 2 ** 200), radices, st.sampled_from(ALL_SPECS))
def test_count_conservation(x, y, r, spec):
    a, b = from_int(x, r), from_int(y, r)
    flat = multiply(a, b, spec)
    traced = multiply(a, b, spec, trace=True)
    assert traced.product == flat.product
    assert traced.count == flat.count
    for frame in traced.trace.walk():
        expect = OpCount() + frame.local
        for c in frame.children:
            expect += c.total()
        assert frame.total() == expect
        assert frame.local.mul1 >= 0 and frame.local.addsub >= 0 and frame.local.shifts >= 0


@settings(max_examples=200)
@given(st.integers(1, 2 ** 400), st.integers(1, 2 ** 400))
def test_binary_progress_each_step(x, y):
    res = mul_nikhilam(from_int(x, 2), from_int(y, 2), trace=True)
    for f in res.trace.walk():
        if f.kind == "nikhilam" and f.decomposition is not None:
            L = max(f.len_a, f.len_b)
            assert len(f.decomposition.a.magnitude) <= L - 1
            assert len(f.decomposition.b.magnitude) <= L - 1


def test_near_base_superiority_exhaustive():
    # every pair of 3-digit operands within 9 above the base 100
    for m in range(100, 110):
        for n in range(100, 110):
            a, b = d10(m), d10(n)
            nk = mul_nikhilam(a, b).count.mul1
            ka = mul_karatsuba(a, b).count.mul1
            sb = mul_schoolbook(a, b).count.mul1
            assert nk < ka < sb, (m, n, nk, ka, sb)


@pytest.mark.parametrize("radix", [2, 10])
def test_opcount_nonnegative_and_additive(radix):
    c = OpCount(1, 2, 3) + OpCount(4, 5, 6)
    assert c == OpCount(5, 7, 9)
    c += OpCount(1, 1, 1)
    assert c.as_dict() == {"mul1": 6, "addsub": 8, "shifts": 10}
    assert set(STRATEGIES) == {"schoolbook", "karatsuba", "nikhilam"}
