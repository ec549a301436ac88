import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ectorsion import divpoly
from ectorsion.catalog import catalog_list, sample_parameters
from ectorsion.curves import Curve, GeneralCurve, Point
from ectorsion.exact_math import Poly
from ectorsion.torsion import (BadPrime, BadReduction, MAZUR_GROUPS, count_points_mod_p, good_primes,
                               group_tag, parse_group_tag, torsion_order_bound, torsion_structure)

Z8 = Curve(49, 256)


def test_division_polynomials_against_sympy():
    # psi_3 and psi_5 of y^2 = x^3 + 49x^2 + 256x, expanded with sympy
    fs = divpoly.polynomials(Z8, 5)
    assert fs[3] == Poly(list(reversed([3, 196, 1536, 0, -65536])))
    psi5 = [5, 980, 54288, 1003520, -6881280, -1156055040, -42797629440, -795982430208,
            -6982006210560, -29463475650560, -54975581388800, 0, 281474976710656]
    assert fs[5] == Poly(list(reversed(psi5)))


def test_division_polynomial_vanishes_on_torsion():
    T = Point(-32, -96)  # order 8 on (49, 256)
    assert Z8.point_order(T) == 8
    f8 = divpoly.psi(Z8, 8)
    assert f8(T.x) == 0
    assert divpoly.psi(Z8, 7)(T.x) != 0


def test_modular_sequence_matches_exact():
    b = Z8.b_invariants
    x = F(3)
    exact = divpoly.sequence(*divpoly.seeds(*b, x), 12, 0, 1)
    mod = 10 ** 9 + 7
    red = divpoly.sequence(*(v % mod for v in divpoly.seeds(*b, 3)), 12, 0, 1, mod)
    assert [int(v) % mod for v in exact] == red


def brute_count(E, p):
    """#E(F_p) by a double loop on the general Weierstrass equation."""
    a1, a2, a3, a4, a6 = (int(c.numerator * pow(c.denominator, -1, p)) % p for c in E.ainvs)
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0:
                n += 1
    return n


def test_anchor_counts():
    assert count_points_mod_p(Curve(49, 256), 7) == 8
    assert count_points_mod_p(Curve(-59, 864), 7) == 12
    with pytest.raises(BadReduction):
        count_points_mod_p(Z8, 3)  # A^2 - 4B = 3^4 * 17
    with pytest.raises(BadPrime):
        count_points_mod_p(Curve(F(1, 5), 1), 5)


CURVES = [Curve(49, 256), Curve(-59, 864), Curve(-463, 45936), Curve(-43, 280),
          GeneralCurve(0, -1, -1, 0, 0), GeneralCurve(F(1, 2), F(-3, 4), F(-3, 4), 0, 0)]


@pytest.mark.parametrize("E", CURVES, ids=repr)
def test_counts_match_brute_force(E):
    for p in good_primes(E, limit=60):
        assert count_points_mod_p(E, p) == brute_count(E, p)


@given(st.sampled_from(catalog_list()), st.integers(0, 10 ** 6))
def test_hasse_bound(entry, seed):
    q = sample_parameters(entry, 1, seed)[0]
    E = entry.curve_at(q)
    for p in good_primes(E, count=8):
        n = count_points_mod_p(E, p)
        assert abs(n - p - 1) <= 2 * math.sqrt(p)


def test_anchor_torsion():
    r = torsion_structure(Curve(49, 256))
    assert r.group == (8,) and r.exact
    r = torsion_structure(Curve(-59, 864))
    assert r.tag == "Z/2xZ/6" and r.order == 12
    assert torsion_structure(GeneralCurve(0, -1, -1, 0, 0)).group == (5,)


def test_torsion_bound_divides_counts():
    bound, primes = torsion_order_bound(Curve(-59, 864))
    assert bound % 12 == 0
    for p in primes:
        assert count_points_mod_p(Curve(-59, 864), p) % 12 == 0


def test_group_tags():
    for g in MAZUR_GROUPS:
        assert parse_group_tag(group_tag(g)) == g
    assert group_tag((2, 6)) == "Z/2xZ/6"
    with pytest.raises(ValueError):
        parse_group_tag("Z/11")
