from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ectorsion.exact_math import (InconsistentEquation, Poly, RatFunc, coprime_base, factor_hints,
                                  factor_integer, format_rational, parse_expr, parse_rational, poly_gcd,
                                  poly_sqrt, ratfunc_is_square, rational_roots, rational_sqrt,
                                  solve_quadratic)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
small_polys = st.lists(st.integers(-30, 30), min_size=1, max_size=6).map(Poly)


def test_parse_and_format_rational():
    assert parse_rational("-6/4") == F(-3, 2)
    assert parse_rational(" 7 ") == 7
    assert format_rational(F(10, 4)) == "5/2"
    assert format_rational(F(-8, 2)) == "-4"
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_rational_sqrt():
    assert rational_sqrt(F(49, 16)) == F(7, 4)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-4)) is None


def test_solve_quadratic_examples():
    assert solve_quadratic(24, -16, -40) == [F(-1), F(5, 3)]
    assert solve_quadratic(1, 0, -2) == []
    assert solve_quadratic(0, 2, -3) == [F(3, 2)]
    with pytest.raises(InconsistentEquation):
        solve_quadratic(0, 0, 1)


# sympy: expand((2x-3)(x+5)^2(7x^2+1)(x-1/4)), roots over Q
F_COEFFS = [F(75, 4), -80, 147, F(-1087, 2), F(449, 4), F(231, 2), 14]  # ascending


def test_rational_roots_against_sympy():
    f = Poly(F_COEFFS)
    assert rational_roots(f) == [F(-5), F(1, 4), F(3, 2)]


def test_gcd_against_sympy():
    f = Poly(F_COEFFS)
    g = Poly([-10, -32, -1, 16, 3])  # (x+5)(x^2-2)(3x+1)
    assert poly_gcd(f, g) == Poly([5, 1])


def test_division_with_remainder():
    a, b = Poly([1, 2, 3, 4]), Poly([1, 1])
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_parse_expr_and_ratfunc():
    f = parse_expr("(11 - u^2)/(10*u)", "u")
    assert f(F(1)) == 1
    assert f(F(2)) == F(7, 20)
    g = parse_expr("(x^2 - 1)/(x - 1)")
    assert g == RatFunc(Poly([1, 1]))
    with pytest.raises(ValueError):
        parse_expr("y + 1", "x")
    with pytest.raises(ZeroDivisionError):
        f(F(0))


def test_ratfunc_square():
    h = parse_expr("(x^2 + 3)/(2*x - 1)")
    assert ratfunc_is_square(h * h) in (h, -h)
    assert ratfunc_is_square(parse_expr("x^3 + 1")) is None


@given(small_polys)
def test_poly_sqrt_round_trip(f):
    if f.is_zero():
        return
    g = poly_sqrt(f * f)
    assert g is not None and g * g == f * f
    assert g.lc > 0


@given(small_polys, st.integers(1, 20))
def test_poly_sqrt_rejects_non_squares(f, c):
    if f.is_zero() or f.degree < 1:
        return
    # f^2 * x is never a square when f != 0
    assert poly_sqrt(f * f * Poly([0, c])) is None


@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(small_polys, rationals)
def test_compose_matches_evaluation(f, q):
    sub = Poly([q, 1])
    assert f.compose(sub)(F(0)) == f(q)


@given(st.lists(rationals, min_size=1, max_size=4, unique=True))
def test_rational_roots_recovers_roots(roots):
    f = Poly([1])
    for r in roots:
        f = f * Poly([-r, 1])
    assert rational_roots(f * Poly([1, 0, 1])) == sorted(roots)


def test_coprime_base_and_hinted_factoring():
    assert coprime_base([12, 18]) == [2, 3]
    n = (10 ** 12 + 39) * (10 ** 12 + 39) * 97
    with factor_hints([10 ** 12 + 39]):
        assert factor_integer(n) == {97: 1, 10 ** 12 + 39: 2}
    assert factor_integer(360) == {2: 3, 3: 2, 5: 1}
    assert factor_integer(1) == {}
