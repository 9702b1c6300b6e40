import random

import pytest

from _oracles import curve_points, geometric_add, repeated_sum
from nikhilam.mulstrategies import STRATEGIES, StrategySpec
from nikhilam.weierstrass import (
    INFINITY,
    Infinity,
    NotOnCurveError,
    SingularCurveError,
    format_point,
    is_on_curve,
    make_curve,
    make_point,
    parse_curve,
    parse_point,
    point_add,
    point_double,
    point_neg,
    repeated_addition,
    scalar_mul_binary,
    scalar_mul_recursive,
)

P, A, B = 17, 2, 2
CURVE = make_curve(P, A, B)
POINTS = curve_points(P, A, B)


def pt(t):
    return INFINITY if t is None else make_point(t[0], t[1], CURVE)


def tup(Q):
    return None if isinstance(Q, Infinity) else (int(Q.x), int(Q.y))


def test_point_count():
    assert len(POINTS) == 19


def test_membership():
    assert is_on_curve(pt((5, 1)), CURVE)
    assert not is_on_curve(make_point(5, 2, CURVE), CURVE)
    assert is_on_curve(INFINITY, CURVE)


def test_negation():
    assert tup(point_neg(pt((5, 1)))) == (5, 16)
    assert point_neg(INFINITY) is INFINITY


def test_small_examples():
    assert tup(point_add(pt((5, 1)), pt((6, 3)), CURVE)[0]) == (10, 6)
    assert tup(point_double(pt((5, 1)), CURVE)[0]) == (6, 3)
    assert point_add(pt((5, 1)), pt((5, 16)), CURVE)[0] is INFINITY
    assert tup(point_add(INFINITY, pt((5, 1)), CURVE)[0]) == (5, 1)


def test_field_multiplication_counts():
    _, c = point_add(pt((5, 1)), pt((6, 3)), CURVE, StrategySpec("schoolbook"))
    # three products: slope, slope squared, y term
    assert c.mul1 > 0
    _, c0 = point_add(INFINITY, pt((5, 1)), CURVE)
    assert c0.mul1 == 0


def test_against_geometric_oracle():
    for Pt in POINTS:
        for Qt in POINTS:
            assert tup(point_add(pt(Pt), pt(Qt), CURVE)[0]) == geometric_add(Pt, Qt, P, A, B, POINTS)
        if Pt is not None:
            assert tup(point_double(pt(Pt), CURVE)[0]) == geometric_add(Pt, Pt, P, A, B, POINTS)


def test_two_torsion():
    # y^2 = x^3 + x over GF(23) has (0,0), whose tangent is vertical
    c = make_curve(23, 1, 0)
    T = make_point(0, 0, c)
    assert point_double(T, c)[0] is INFINITY
    assert point_add(T, T, c)[0] is INFINITY


def test_off_curve_rejected():
    bad = make_point(5, 2, CURVE)
    with pytest.raises(NotOnCurveError):
        point_double(bad, CURVE)
    with pytest.raises(NotOnCurveError):
        point_add(bad, pt((5, 1)), CURVE)
    loose = make_curve(P, A, B, validate=False)
    point_double(make_point(5, 2, loose), loose)


def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        make_curve(17, 0, 0)
    with pytest.raises(ValueError):
        make_curve(3, 1, 1)


def test_text_round_trip():
    c = parse_curve("p=17 a=2 b=2")
    assert c == CURVE
    assert format_point(parse_point("(5, 1)", c)) == "(5,1)"
    assert parse_point("inf", c) is INFINITY
    assert format_point(INFINITY) == "inf"
    with pytest.raises(ValueError):
        parse_point("5,1", c)
    with pytest.raises(ValueError):
        parse_curve("p=17 a=2")


# -- scalar multiplication -------------------------------------------------------


G = pt((5, 1))


@pytest.mark.parametrize("n, expect", [(0, None), (1, (5, 1)), (2, (6, 3)), (19, None), (20, (5, 1))])
def test_scalar_examples(n, expect):
    assert tup(scalar_mul_binary(n, G, CURVE)[0]) == expect
    assert tup(scalar_mul_recursive(n, G, CURVE)[0]) == expect


def test_scalar_five_against_oracle():
    assert tup(scalar_mul_binary(5, G, CURVE)[0]) == repeated_sum(5, (5, 1), P, A, B, POINTS)
    _, tr, _ = scalar_mul_recursive(5, G, CURVE)
    assert tr.expression() == "P+2(2P)"


def test_hundred_traces():
    _, tr, _ = scalar_mul_binary(100, G, CURVE)
    assert (tr.doublings, tr.additions) == (7, 3)
    _, tr, _ = scalar_mul_recursive(100, G, CURVE)
    assert tr.expression() == "2(2(P+2(2(2(P+2P)))))"
    assert "".join(tr.steps) == "ADADDDADD"


def test_methods_agree_up_to_1000():
    for n in range(0, 1001):
        assert scalar_mul_binary(n, G, CURVE)[0] == scalar_mul_recursive(n, G, CURVE)[0]


def test_scalar_homomorphism():
    rng = random.Random(7)
    for _ in range(100):
        n, m = rng.randrange(500), rng.randrange(500)
        lhs = point_add(scalar_mul_binary(n, G, CURVE)[0], scalar_mul_binary(m, G, CURVE)[0], CURVE)[0]
        assert lhs == scalar_mul_binary(n + m, G, CURVE)[0]


def test_repeated_addition_reference():
    for n in range(40):
        assert tup(repeated_addition(n, G, CURVE)) == repeated_sum(n, (5, 1), P, A, B, POINTS)


def test_trace_replay():
    for n in (0, 1, 77, 100, 255):
        for method in (scalar_mul_binary, scalar_mul_recursive):
            Q, tr, _ = method(n, G, CURVE)
            assert tr.replay(G, CURVE) == Q


def test_strategy_independence_on_larger_curve():
    # p = 2^61 - 1 with a point found by search
    p = 2 ** 61 - 1
    for radix in (2, 10):
        c = make_curve(p, 3, 11, radix=radix)
        x = 1
        while True:
            rhs = (x ** 3 + 3 * x + 11) % p
            y = pow(rhs, (p + 1) // 4, p) if p % 4 == 3 else None
            if y is not None and y * y % p == rhs:
                break
            x += 1
        Q = make_point(x, y, c)
        results = {format_point(scalar_mul_binary(123456789, Q, c, StrategySpec(k))[0]) for k in STRATEGIES}
        assert len(results) == 1


def test_negative_scalar_rejected():
    with pytest.raises(ValueError):
        scalar_mul_binary(-1, G, CURVE)
    with pytest.raises(ValueError):
        scalar_mul_recursive(-1, G, CURVE)
